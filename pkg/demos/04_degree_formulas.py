#!/usr/bin/env python
# coding: utf-8

# # Degree formulas for a birational map
#
# A cubic surface maps birationally onto the plane. We check the divisibility
# consequence and a decomposition of the class difference.

from cobordism.genera import FormalClass, MorphismDatum, gdf_verify, rost_check
from cobordism.varieties import hypersurface, projective_space

P1, P2 = projective_space(1), projective_space(2)
cubic = hypersurface(3, 3, label="cubic3")
f = MorphismDatum(cubic, P2, 1)

print(rost_check(f, 3).to_json())

# ## Decomposing [cubic] - [P2]

right = FormalClass(((6, P1 * P1), (-6, P2)))
print(gdf_verify(f, right).to_json())

# Forgetting to subtract [P2] leaves an error in c2.
wrong = FormalClass(((6, P1 * P1), (-5, P2)))
print(gdf_verify(f, wrong).to_json())
