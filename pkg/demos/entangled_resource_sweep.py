"""Sweep the shared-resource entanglement and watch the success jump.

Four orthogonal two-qubit product states (eq1) cannot be told apart
perfectly when Alice and Bob are limited to local projective measurements
and pooled outcomes: the single-copy ceiling is cos^2(pi/8) ~ 0.8536.
Appending a shared pair a|00> + b|11> and letting each party measure the
enlarged system lifts the success to 3/4 + ab/2, which crosses the ceiling
once ab exceeds (2 - sqrt(2)) / (2 sqrt(2)) ~ 0.2071 and reaches 1 at a
maximally entangled pair.
"""

import numpy as np

from lpdiscrim import (
    build_groisman_protocol,
    eq1,
    evaluate,
    groisman_formula,
    lp_baseline_formula,
    mes,
    nmes,
)

AB_THRESHOLD = (2.0 - np.sqrt(2.0)) / (2.0 * np.sqrt(2.0))


def main():
    ensemble = eq1()
    ceiling = lp_baseline_formula(np.pi / 2)
    print(f"single-copy local ceiling : {ceiling:.7f}")
    print(f"improvement threshold ab  : {AB_THRESHOLD:.7f}")
    print()
    print("   a^2       ab    engine   formula   beats ceiling")

    for a2 in np.linspace(0.50, 0.98, 13):
        resource = nmes(a2, squared=True)
        a, b = resource.amplitudes
        ab = a * b
        report = evaluate(ensemble, build_groisman_protocol(resource))
        predicted = groisman_formula(ab)
        assert abs(report.p_success - predicted) < 1e-9
        marker = "yes" if report.p_success > ceiling + 1e-12 else "no"
        print(f"  {a2:.3f}  {ab:.5f}  {report.p_success:.6f}  {predicted:.6f}   {marker}")
        # the crossing happens exactly where the closed form says it should
        assert (report.p_success > ceiling) == (ab > AB_THRESHOLD)

    final = evaluate(ensemble, build_groisman_protocol(mes()))
    assert final.perfect
    print()
    print(f"maximally entangled pair  : {final.p_success:.6f} (perfect)")


if __name__ == "__main__":
    main()
