"""How many copies until local measurements suffice, and how few are used.

A counting argument caps the copies needed to perfectly discriminate a
full orthogonal product basis on n subsystems of dimensions d_1 ... d_n:

    copies <= x + 1,   x = ceil((prod d_i - sum (d_i - 1)) / n)

The constructor below finds an explicit fixed schedule (one basis choice
per party per copy, redundant slots idled) and verifies it on the engine.
For eq1 the bound of two copies is met with only three of the four
measurement slots active; the nine-state domino basis finishes in two
copies even though the bound allows four.
"""

import math

from lpdiscrim import (
    DimensionProfile,
    construct_multicopy_schedule,
    copy_bound,
    domino_basis,
    eq1,
    eq4,
)


def active_slots(result):
    sched = result.protocol.schedule
    return sum(
        sched.measurement(p, c) is not None
        for p in sched.parties
        for c in range(result.copies)
    )


def show(tag, result):
    total = len(result.protocol.schedule.parties) * result.copies
    print(f"  {tag:<26} copies {result.copies} (bound {result.bound}), "
          f"slots {active_slots(result)}/{total} active, "
          f"p = {result.report.p_success:.6f}")
    assert result.report.perfect
    assert result.copies <= result.bound


def main():
    print("counting bound on copies:")
    for dims in ((2, 2), (3, 3), (2, 2, 2)):
        profile = DimensionProfile(dims)
        bound = copy_bound(profile)
        print(f"  dims {dims}, {profile.basis_size} states: at most {bound} copies")

    print()
    print("explicit schedules found:")
    show("eq1", construct_multicopy_schedule(eq1()))
    show("computational (alpha=0)", construct_multicopy_schedule(eq4(0.0)))
    show("tilted (alpha=pi/5)", construct_multicopy_schedule(eq4(math.pi / 5)))

    domino = construct_multicopy_schedule(domino_basis())
    show("domino (3x3, 9 states)", domino)
    # the constructor beats the counting bound here
    assert domino.copies == 2 and domino.bound == 4

    single = construct_multicopy_schedule(eq4(0.0))
    assert single.copies == 1
    print()
    print("the computational basis needs no second copy at all")


if __name__ == "__main__":
    main()
