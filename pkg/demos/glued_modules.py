# coding: utf-8

# # Modules glued from charts
#
# A module is given chart by chart as a cyclic quotient of the rank one Weyl
# algebra.  Gluing only needs integer exponents on each overlap.

# In[1]:

from fractions import Fraction

from cherednik_zl.microlocal import (
    build_L, build_M_delta, build_weight_spec, irreducibility_certificate, support, wellformed_check,
)
from cherednik_zl.sections import (
    explicit_delta_spec, b_locally_nilpotent_on_sections, global_section_v, graded_dimensions, v_range,
)
from cherednik_zl.toric import c_to_ctilde_inverse, ordering_eta

eta = ordering_eta((-3, 1, 1, 1))
ct = (Fraction(1, 2), Fraction(1, 2), Fraction(3))
c = c_to_ctilde_inverse(ct, eta)


# In[2]:

spec = build_M_delta(1, c, eta)
for cd in spec.charts:
    print(cd.j, cd.kind, cd.lam)
print(wellformed_check(spec))
print("support:", sorted(support(spec)))


# Global sections of weight zero have one dimension per level.

# In[3]:

print(graded_dimensions(spec, 5))


# The quotient L(3) stops at the chart where the partial sum becomes integral.

# In[4]:

L = build_L(3, c, eta)
print([cd.kind for cd in L.charts], irreducibility_certificate(L))
print(graded_dimensions(L, 10))


# Explicit sections built from the restriction constants.

# In[5]:

app = explicit_delta_spec(1, c, eta)
print("v_range(3) =", v_range(app, 3))
for k, (e, s) in sorted(global_section_v(app, 3, 1).items()):
    print(" chart", k, "exponent", e, "coefficient", s)


# A module that reaches the divisor D_0 is not in category O: b is not nilpotent.

# In[6]:

w = build_weight_spec(c, eta, Fraction(2, 7))
print(sorted(support(w)), b_locally_nilpotent_on_sections(w, 4))
print(sorted(support(spec)), b_locally_nilpotent_on_sections(spec, 4))
