#!/usr/bin/env python
# coding: utf-8

# # Chern numbers of complete intersections
#
# A variety here is a generic complete intersection in a product of
# projective spaces. Its tangent Chern class comes from the Euler sequence
# and adjunction, computed in the truncated Chow ring.

from cobordism.varieties import (
    chern_numbers,
    hypersurface,
    newton_sd,
    projective_space,
    s_number_newton,
    s_number_virtual,
    tangent_chern,
)

cubic = hypersurface(3, 3, label="cubic surface")
data = tangent_chern(cubic)
print("c(T) =", data.total)
print("[X]  =", data.fundamental)
print(chern_numbers(cubic))

# ## s_d two ways
#
# Newton's identity writes the power sum of the Chern roots in c1..cd.

for d in range(1, 5):
    print(d, newton_sd(d))

for V in (projective_space(4), cubic, hypersurface(2, 4), projective_space(1) * projective_space(2)):
    print(V.name(), s_number_newton(V), s_number_virtual(V))

# Products always give zero (last row).
