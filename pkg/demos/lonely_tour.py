"""
Which divisors are sigma-lonely
================================
"""

from zgraded import parse_poly
from zgraded.cycles import Z
from zgraded.graded import GradedRingSpec
from zgraded.lonely import MultiPoly, is_lonely, is_lonely_poly, validate_witness
from zgraded.sigma import ADDITIVE, MULTIPLICATIVE, SigmaLine, TorusDescriptor
from zgraded.verification import check_comaximality

A = SigmaLine(ADDITIVE)
B2 = SigmaLine(MULTIPLICATIVE, "2")

for ring, text in ((A, "u*(u-3)"), (A, "u^2 + 1"), (B2, "(u-1)*(u-2)"), (B2, "(u-1)*(u-3)")):
    print(ring, text, is_lonely_poly(ring, parse_poly(text)).to_json())

# a surface in a two-dimensional torus, sigma = (2 x2, 3 x3)
torus = TorusDescriptor(2, ["2", "3"], names=["x2", "x3"])
f = MultiPoly.from_expr("1 + x2 + x3", ("x2", "x3"))
verdict = is_lonely(torus, f)
print(verdict, validate_witness(torus, f, verdict))
print(is_lonely(torus, "1 + x2*x3"))

# building B with a non-lonely orbit breaks comaximality right away
q = parse_poly("u*(u-1)")
spec = GradedRingSpec(A, q, Z(0), q, check_lonely=False)
print(check_comaximality(spec, (0, 6)))
