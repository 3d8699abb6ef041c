"""Survey the quadratic-twist family of an elliptic curve over F_5(t).

For E: y^2 = x(x - 1)(x - t) and each squarefree u of degree 2 coprime
to the bad places, the twisted L-function is a degree-4 integer
polynomial computed exactly by point counting.  The survey classifies
every L-polynomial's Galois group, reports the proportion of maximal
outcomes, and checks the predicted root-number and square-class laws.

Run:  python3 demos/twist_family_survey.py
"""

from orthogal.ffield import get_field
from orthogal.lfunc import (FqTCurve, enumerate_twists, l_function,
                            survey_delta)


def main():
    F = get_field(5)
    E = FqTCurve.from_a_invariants(F, [0], [-1, -1], [0], [0, 1], [0])

    us = enumerate_twists(E, 2)
    print(f"degree-2 twist family over F_5(t): {len(us)} members")
    u = us[0]
    L = l_function(E, u)
    print("sample twist u =", list(u.coeffs))
    print("  L coefficients:", L.coeffs)
    print("  epsilon:", L.epsilon,
          "| functional equation:", L.functional_equation_holds())

    rep = survey_delta(E, 2)
    print("\nfull survey (d = 2, base F_5):")
    print("  maximal-group proportion:", rep.delta_hat)
    print("  root numbers:", dict(rep.epsilon_counts))
    print("  square class constant on eps=+1 twists:",
          rep.square_class_constant)

    rep2 = survey_delta(E, 2, n=2, sample=24, seed=0)
    print("base F_25 (24 sampled twists):")
    print("  maximal-group proportion:", rep2.delta_hat)


if __name__ == "__main__":
    main()
