"""
Cycles, their iterates, and the trichotomy of support sequences
================================================================
"""

import random

from zgraded import parse_poly
from zgraded.cycles import parse_cycle
from zgraded.cycles import classify_sequence, iterate, random_pleasantly_alternating, shift
from zgraded.graded import GradedRingSpec
from zgraded.sigma import ADDITIVE, SigmaLine
from zgraded.verification import check_cycle_lemmas, check_trichotomy, recover_cycle_data, support_cycle_sequence

G = parse_cycle("Z0 - Z1 + Z2")
for n in range(-3, 5):
    print(f"G_{n:2d} = {iterate(G, n)}")

# the cocycle identity, once by hand
m, n = 2, 3
print(iterate(G, m) + shift(iterate(G, n), -m) == iterate(G, m + n))

print(check_cycle_lemmas(G, 20))

# the converse: effective iterates force a multiple of an alternating cycle
# or a pinned index
for text in ("Z0 - Z1 + Z2", "2Z0", "Z0 + Z1 - Z2 + Z3"):
    print(text, "->", classify_sequence(parse_cycle(text), 16))

rng = random.Random(3)
print([str(random_pleasantly_alternating(rng, 6)) for _ in range(4)])

# support sequences of B(G, H, J) along the orbit of u
A = SigmaLine(ADDITIVE)
u = parse_poly("u")
one = parse_poly("1")
for h, j in ((u, u), (one, u), (u, one)):
    spec = GradedRingSpec(A, u, G, h, j)
    seq = support_cycle_sequence(spec, u, 6)
    print(f"h={h}, j={j}:", check_trichotomy(seq, G).witness)

# recover (G, Omega) from E_n = G_n - Omega
omega = parse_cycle("Z1")
E = {n: iterate(G, n) - omega for n in range(3, 15)}
print(recover_cycle_data(E))
