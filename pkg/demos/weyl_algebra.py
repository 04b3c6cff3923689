"""
The first Weyl algebra as a graded subring of a skew Laurent ring
==================================================================

x = t and y = u t^-1 inside k(u)[t, t^-1; sigma] with sigma(u) = u + 1.
"""

from zgraded import GradedPieces, gwa_embed, parse_poly
from zgraded.sigma import ADDITIVE, SigmaLine

A = SigmaLine(ADDITIVE)
u = parse_poly("u")

x, y, spec = gwa_embed(A, u)
print("x =", x)
print("y =", y)

# the defining relations
print("y x =", y * x)
print("x y =", x * y)
print("x y - y x =", x * y - y * x)

# powers of y against the piece generators of B(Z_0, (u+1), R)
pieces = GradedPieces.from_spec(spec)
power = y
for n in range(1, 6):
    print(f"y^{n}: {power.coeff(-n)}    g_{-n} = {pieces(-n)}")
    power = power * y

# positive degrees are spanned by t^n alone
print({n: str(pieces(n)) for n in range(0, 4)})

# a generalized Weyl algebra with two points on one orbit is refused
try:
    gwa_embed(A, parse_poly("u*(u-3)"))
except ValueError as exc:
    print("refused:", exc)
