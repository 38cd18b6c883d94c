"""When does an entangled measurement basis start paying for itself?

The eq4 family interpolates between the computational product basis
(alpha = 0) and the eq1 ensemble (alpha = pi/2). With a shared maximally
entangled pair, Bob measures his state/resource pair in a basis whose
own entanglement angle alphaprime is a free knob. The closed form

    p(alpha, alphaprime) = (sin^2((alpha+alphaprime)/2) + cos^2((alpha-alphaprime)/2)) / 2

increases in alphaprime all the way to pi/2 for every alpha, so within
this family the fully entangled basis is always the right setting. The
interesting comparison is against the best no-resource measurement,
cos^2(alpha/4): the closed form only catches up at alpha = pi/3, where
both sides give exactly cos^2(pi/12), and wins beyond it. The closed
form prices in a fixed outcome-to-state decoding; the engine decodes by
maximum a posteriori and can only do better.
"""

import numpy as np

from lpdiscrim import (
    build_alpha_prime_protocol,
    eq4,
    eq5_formula,
    evaluate,
    lp_baseline_formula,
)


def main():
    knob = np.linspace(0.0, np.pi / 2, 721)

    print(" alpha/pi   no-resource   closed form   winner")
    for alpha in np.linspace(0.10, 0.50, 9) * np.pi:
        baseline = lp_baseline_formula(alpha)
        values = [eq5_formula(alpha, ap) for ap in knob]
        # the knob is monotone: the maximum always sits at alphaprime = pi/2
        assert int(np.argmax(values)) == len(knob) - 1
        best = values[-1]
        winner = "entangled basis" if best > baseline + 1e-12 else "product basis"
        print(f"   {alpha / np.pi:.3f}      {baseline:.6f}      {best:.6f}   {winner}")
        assert (best > baseline + 1e-12) == (alpha > np.pi / 3 + 1e-9)

    # crossover: at alpha = pi/3 the two strategies tie exactly
    tie = eq5_formula(np.pi / 3, np.pi / 2)
    assert abs(tie - lp_baseline_formula(np.pi / 3)) < 1e-12
    assert abs(tie - np.cos(np.pi / 12) ** 2) < 1e-12
    print()
    print(f"crossover at alpha = pi/3: both strategies give {tie:.12f}")

    # the closed form floors the engine, which re-decodes outcomes by MAP
    alpha, ap = 0.35 * np.pi, 0.30 * np.pi
    engine = evaluate(eq4(alpha), build_alpha_prime_protocol(ap)).p_success
    floor = eq5_formula(alpha, ap)
    assert engine >= floor - 1e-9
    print(f"engine at (0.35 pi, 0.30 pi): {engine:.9f} (closed form {floor:.9f})")

    # perfect discrimination needs both angles maxed out
    top = evaluate(eq4(np.pi / 2), build_alpha_prime_protocol(np.pi / 2))
    assert top.perfect
    print(f"alpha = alphaprime = pi/2: {top.p_success:.6f} (perfect)")


if __name__ == "__main__":
    main()
