"""Discriminate Bell states with a partially entangled helper pair.

Locally, the four Bell states are indistinguishable beyond a coin flip on
pairs. Sharing an extra pair a|00> + b|11> and running a parity
measurement followed by a Bell measurement on each side achieves

    3 states: 2/3 + 2ab/3        4 states: 1/2 + ab

both of which reach 1 only for a maximally entangled helper. A randomized
probe over structured and random product-measurement protocols on the
enlarged system never does better than this builder, supporting (without
proving) its optimality.
"""

import numpy as np

from lpdiscrim import (
    SearchConfig,
    bell_basis,
    bell_discrimination_formula,
    build_parity_then_bell,
    evaluate,
    lpse_optimality_probe,
    mes,
    nmes,
    subset,
)


def main():
    full = bell_basis()
    print("   ab     3-state engine/formula     4-state engine/formula")
    for ab in (0.10, 0.25, 0.40, 0.50):
        a2 = 0.5 + np.sqrt(0.25 - ab * ab)
        resource = nmes(min(a2, 1.0 - 1e-15), squared=True)
        protocol = build_parity_then_bell(resource)

        three = evaluate(subset(full, (0, 1, 2)), protocol).p_success
        four = evaluate(full, protocol).p_success
        f3 = bell_discrimination_formula(3, ab)
        f4 = bell_discrimination_formula(4, ab)
        assert abs(three - f3) < 1e-9
        assert abs(four - f4) < 1e-9
        print(f"  {ab:.2f}     {three:.6f} / {f3:.6f}        {four:.6f} / {f4:.6f}")

    # probe a cloud of alternative product-measurement protocols at ab = 0.4
    resource = nmes(0.8, squared=True)
    probe = lpse_optimality_probe(full, resource, SearchConfig(n_random_probes=60, seed=5))
    print()
    print(f"probe over {probe.n_probes} protocols: best {probe.max_value:.6f} "
          f"({probe.best_kind}), builder {probe.builder_value:.6f}")
    assert probe.max_value <= probe.builder_value + 1e-9
    assert probe.best_kind == "parity-then-bell"

    # a maximally entangled helper makes all four states perfectly distinguishable
    perfect = evaluate(full, build_parity_then_bell(mes()))
    assert perfect.perfect
    print(f"maximally entangled helper: {perfect.p_success:.6f} (perfect)")


if __name__ == "__main__":
    main()
