"""Exact-arithmetic branch table for the decay classifier.

Every quantity is a Fraction, so ties are decided exactly. Run:
    python3 tests/oracles/classifier_table.py
"""
from fractions import Fraction as F


def classify(n, alpha, p, lam):
    mu1 = F(4) / (2 - alpha) * (1 / (p - 1) - (n - alpha) / F(4))
    mu2 = F(2) / (p - 1)
    psubc = 1 + 2 * alpha / (n - alpha)
    if p > psubc:
        if lam < mu1:
            return 1, lam, 0
        if lam == mu1:
            return 2, lam, 1
        return 4, mu1, 0
    if p == psubc:
        if lam < mu2:
            return 1, lam, 0
        if lam == mu2:
            return 3, lam, 2
        return 5, mu2, 1
    if lam < mu2:
        return 1, lam, 0
    if lam == mu2:
        return 2, lam, 1
    return 6, mu2, 0


ROWS = [
    (3, F(1, 2), F(2), F(1, 2)),
    (3, F(1, 2), F(2), F(1)),
    (3, F(1, 2), F(6, 5), F(10)),
    (3, F(1, 2), F(7, 5), F(5)),
    (3, F(1, 2), F(2), F(3)),
    (3, F(1, 2), F(7, 5), F(6)),
    (1, F(1, 2), F(2), F(5)),
    (3, F(1, 2), F(9, 5), F(5, 3)),
    (1, F(0), F(3), F(1, 2)),
    (2, F(1, 4), F(3, 2), F(3)),
]

for n, a, p, lam in ROWS:
    branch, mu, ell = classify(n, a, p, lam)
    print(f"{{{n}, {float(a)!r}, {str(p)!r}, {str(lam)!r}, {branch}, {float(mu)!r}, {ell}}},")
