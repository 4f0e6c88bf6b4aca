"""Second-order series of the smooth B = C solution near t = 0.

Solves for the Taylor coefficients of A1, A2, A3, B about (0, -a, a, b)
so that the B = C system holds through O(t^2).
"""
import sympy as sp

t, a, b = sp.symbols("t a b", positive=True)
p, k, q2, q3, m, n1, n2, n3 = sp.symbols("p k q2 q3 m n1 n2 n3")

A1 = -4 * t + p * t**2 + n1 * t**3
A2 = -a + k * t + q2 * t**2 + n2 * t**3
A3 = a + k * t + q3 * t**2 + n3 * t**3
B = b + m * t**2

equations = [
    sp.diff(A1, t) - (2 * A1**2 / B**2 + ((A2 - A3)**2 - A1**2) / (A2 * A3)),
    sp.diff(A2, t) - (2 * A2**2 / B**2 + ((A3 - A1)**2 - A2**2) / (A1 * A3)),
    sp.diff(A3, t) - (2 * A3**2 / B**2 + ((A1 - A2)**2 - A3**2) / (A1 * A2)),
    sp.diff(B, t) + (A1 + A2 + A3) / B,
]

conditions = []
for eq in equations:
    s = sp.expand(sp.series(sp.simplify(eq), t, 0, 3).removeO())
    conditions += [c for c in (sp.simplify(s.coeff(t, i)) for i in range(-1, 3)) if c != 0]

for solution in sp.solve(conditions, [p, k, q2, q3, m, n1, n2, n3], dict=True):
    for sym in (p, k, q2, q3, m):
        print(sym, "=", sp.factor(solution.get(sym, sym)))
    print("slope at (a, b) = (1/2, 1):", solution[k].subs({a: sp.Rational(1, 2), b: 1}))
