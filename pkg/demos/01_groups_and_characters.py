"""Groups, elements, characters, and the circle norm.

Every group here is an explicit product of cycles Z_{n1} x ... x Z_{nk}.
Elements and characters share one mixed-radix index space (the group is
self-dual), and character phases are exact rationals, so nothing below
depends on floating-point luck.
"""

from addcomb import FinAbGroup, arg_norm, character_arg_norm, eval_character

# a cyclic group and a product group
g = FinAbGroup([12])
h = FinAbGroup([4, 3])
print("groups:", g, "order", g.order, "|", h, "order", h.order)

# elements add componentwise mod the cycle lengths
x = h.element((3, 1))
y = h.element((1, 2))
print(f"{x.coords} + {y.coords} = {(x + y).coords}")
print(f"-{x.coords} = {(-x).coords}")

# characters are indexed the same way; chi_m(x) = exp(2 pi i sum m_j x_j / n_j)
chi = h.character((1, 1))
print("chi(x) =", eval_character(chi, x))

# the homomorphism law, spot checked
assert abs(chi(x + y) - chi(x) * chi(y)) < 1e-12

# the circle norm ||z|| = |Arg z| / 2pi measures how far a phase is from 1
for m in range(4):
    z = eval_character(g.character(m), g.element(1))
    print(f"||chi_{m}(1)|| = {arg_norm(z):.4f}  (exact {character_arg_norm(g.character(m), g.element(1))})")

# the dual group law: adding character indices multiplies the characters
m1, m2 = h.character((1, 0)), h.character((0, 2))
assert abs((m1 + m2)(x) - m1(x) * m2(x)) < 1e-12
print("dual group law holds")
