"""One classical bit, forwarded mid-protocol, replaces the quantum channel.

In the interactive protocol Alice Bell-measures her qubit together with
her half of a shared maximally entangled pair, compresses the four
outcomes through a two-valued message map, and sends Bob a single bit.
Bob picks one of two local bases accordingly. For triples made of two
Bell states plus an orthogonal partially entangled third state this is
enough for perfect discrimination, and the same holds for the eq8
quadruple when its two tilt angles coincide. A quadruple with distinct
tilts resists: the best one-bit protocol stalls just short of 1.
"""

from lpdiscrim import (
    eq8,
    find_ictp_protocol,
    subset,
    two_bells_and_third,
)


def describe(tag, result):
    comm = result.protocol.comm
    state = "perfect" if result.perfect else "sub-perfect"
    print(f"  {tag:<28} p = {result.p_s:.9f}  ({state}, message map {result.message_map})")
    # one round, one bit: Alice's four Bell outcomes collapse to {0, 1}
    assert comm is not None and comm.kind == "one-cbit"
    assert set(result.message_map) == {0, 1}


def main():
    print("triples (two Bell states + entangled third):")
    for variant in ("phi", "psi", "mixed"):
        ens = two_bells_and_third(variant, 0.8, 0.6)
        result = find_ictp_protocol(ens)
        describe(variant, result)
        assert result.perfect
    # a triple cut out of the eq8 quadruple works too
    result = find_ictp_protocol(subset(eq8(0.8, 0.9), (0, 1, 2)))
    describe("eq8 first three", result)
    assert result.perfect

    print()
    print("quadruples:")
    matched = find_ictp_protocol(eq8(0.7, 0.7, strict=False))
    describe("matched tilts (c=a, d=b)", matched)
    assert matched.perfect

    generic = find_ictp_protocol(eq8(0.8, 0.9))
    describe("generic tilts", generic)
    assert not generic.perfect
    assert 0.95 < generic.p_s < 1.0 - 1e-9
    print()
    print(f"generic quadruple searched {generic.n_candidates} Bob basis pairs "
          f"in {generic.wall_time:.2f}s")


if __name__ == "__main__":
    main()
