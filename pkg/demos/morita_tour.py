"""
End(L) for the progenerators L over B(Z_0, (h), R)
===================================================
"""

from zgraded import parse_poly
from zgraded.graded import GradedPieces, GradedRingSpec
from zgraded.morita import build_L, check_morita, cycle_from_S, end_of_module, s_from_cycle
from zgraded.sigma import ADDITIVE, SigmaLine

A = SigmaLine(ADDITIVE)
u = parse_poly("u")

S = {1}
G = cycle_from_S(S)
print("S =", S, "-> G =", G, "-> S =", s_from_cycle(G))

L = build_L(A, u, S, 12)
print({n: L(n) for n in range(-3, 4)})

end = end_of_module(A, L, 4)
pieces = GradedPieces.from_spec(GradedRingSpec(A, u, G, u))
for m in range(-4, 5):
    print(f"{m:2d}  End: {str(end(m)):20s} B: {pieces(m)}")

print(check_morita(GradedRingSpec(A, u, G, u), 8))

# the same identity with a J-part, carried over by psi
print(check_morita(GradedRingSpec(A, u, G, u, u), 6))

# a wrong target is caught in the degree where it differs
broken = pieces.override(3, u * u)
print(check_morita(GradedRingSpec(A, u, G, u), 8, target=broken))
