#!/usr/bin/env python
# coding: utf-8

# # The universal formal group law
#
# Over Q the universal law is determined by its logarithm
# l(u) = u + m1 u^2 + m2 u^3 + ...; the law is F(u, v) = l^-1(l(u) + l(v)).

from cobordism.fgl import (
    additive_map,
    check_fgl_axioms,
    multiplicative_map,
    n_series,
    specialize,
    universal_fgl,
)

F = universal_fgl(5)
print(F.ring)

# ## Low coefficients

for (i, j), a in sorted(F.table().items()):
    if i <= j:
        print(f"a_{i}{j} = {a}")

# ## Axioms, checked on the truncated series

for row in check_fgl_axioms(F).rows():
    print(row)

# ## Two specializations
#
# Killing every m_k gives the additive law; m_k -> beta^k/(k+1) makes the
# logarithm -log(1 - beta u)/beta and the law becomes multiplicative.

print(specialize(F, additive_map(5)))
print(specialize(F, multiplicative_map(5)))

# ## The [n]-series

G = specialize(F, multiplicative_map(5))
for n in (2, 3, -1):
    print(n, n_series(G, n))
