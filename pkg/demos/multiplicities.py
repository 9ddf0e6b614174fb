# coding: utf-8

# # Standard modules and their composition factors
#
# With l = 4, theta = (-3, 1, 1, 1) and c~ = (1/2, 1/2, 3), the partial sums
# starting at 1 are 0, 1/2, 1, 4, so three of them are integers.

# In[1]:

from fractions import Fraction

from cherednik_zl.category_o import (
    delta_module, epsilon_index, irreducible_quotient, multiplicity_bruteforce, multiplicity_formula,
)
from cherednik_zl.toric import c_to_ctilde_inverse, ordering_eta

theta = (-3, 1, 1, 1)
eta = ordering_eta(theta)
ct = (Fraction(1, 2), Fraction(1, 2), Fraction(3))
c = c_to_ctilde_inverse(ct, eta)
print("eta =", eta, " c =", [str(v) for v in c])


# In[2]:

for i in range(1, 5):
    d = delta_module(i, c, eta)
    L = irreducible_quotient(d)
    print(i, "lowest weight", d.mu0, " dim L =", L.dim, " eps =", epsilon_index(i, ct))


# The formula and the character subtraction agree.

# In[3]:

for i in range(1, 5):
    print(i, multiplicity_formula(i, ct, c, theta), multiplicity_bruteforce(i, c, eta))


# # The same algebra from the Cherednik side
#
# z^l, d^l and z d act on the e_0 part of a polynomial module.  After an
# affine change of variables they satisfy the relations of a, b and h.

# In[4]:

from cherednik_zl.cherednik import (
    GradedPolyVector, c_to_kappa, gwa_action_on_cherednik, lowest_spherical_degree,
)

kappa = c_to_kappa(c)
for i in range(4):
    m0 = lowest_spherical_degree(4, i)
    v = GradedPolyVector.basis(4, i, m0)
    print("label", i, " h on the lowest vector:", gwa_action_on_cherednik("h", v, kappa).coeffs)
