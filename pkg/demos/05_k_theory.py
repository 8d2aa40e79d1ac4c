#!/usr/bin/env python
# coding: utf-8

# # Theories on products of projective spaces
#
# A theory here is a coefficient ring plus a group law. First Chern classes
# of line bundles add through the law, and the law can be read back from
# c1(O(1, 1)) on P^N x P^N.

from cobordism.theories import (
    c1_line_bundle,
    extract_fgl,
    k0_c1_check,
    k_theory,
    line_bundle_class,
    pb_basis_check,
    pushforward_point,
    theory_ring,
)

K = k_theory()
T = theory_ring(K, (2,))
print(c1_line_bundle(T, (2,)))
print(c1_line_bundle(T, (-1,)))

print(extract_fgl(K, 4))

# ## Push-forward to the point is the Euler characteristic

T11 = theory_ring(K, (1, 1))
for twist in ((0, 0), (1, 2), (-2, 0), (-2, -2)):
    print(twist, pushforward_point(T11, line_bundle_class(T11, twist)))

# ## Sanity checks

print(pb_basis_check(T11))
print(k0_c1_check(3).passed)
