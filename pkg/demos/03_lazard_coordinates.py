#!/usr/bin/env python
# coding: utf-8

# # Classes of varieties in Q[m1, m2, ...]
#
# Chern numbers determine a class rationally. Products of projective spaces
# form a basis in each dimension, so the class is found by one exact solve.

from cobordism.genera import basis_matrix, class_in_lazard, multiplicative_image
from cobordism.theories import chi_structure_sheaf
from cobordism.varieties import hypersurface, projective_space

parts, M, _ = basis_matrix(3)
print(parts)
print(M)

surfaces = [projective_space(2)] + [hypersurface(a, 3, label=f"degree {a}") for a in (2, 3, 4)]
for V in surfaces:
    c = class_in_lazard(V)
    coords = ", ".join(f"{x} [{'x'.join(f'P{k}' for k in lam)}]" for lam, x in c.coefficients.items())
    print(f"{V.name():>9}: {c.element}   = {coords}")

# ## Sending m_k to beta^k/(k+1)
#
# The image of a class is beta^dim times the holomorphic Euler
# characteristic, which we also get from the Koszul complex.

for V in (hypersurface(3, 3), hypersurface(4, 3), hypersurface(5, 4)):
    print(V.name(), multiplicative_image(class_in_lazard(V)), chi_structure_sheaf(V))
