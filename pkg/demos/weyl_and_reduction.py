# coding: utf-8

# # Weyl algebra arithmetic and the reduced algebra
#
# Elements are normal ordered with every x to the left of every y.  Scalars
# are Laurent polynomials in h^(1/2) with exact rational coefficients.

# In[1]:

from fractions import Fraction

from cherednik_zl.weyl import SymbolPoly, WeylElement, normal_order, star_multiply, symbol


# In[2]:

x = WeylElement.x(1, 1)
y = WeylElement.y(1, 1)
print(y * x)            # x1*y1 + h
print((y * y) * (x * x))


# Multiplying normal ordered elements agrees with the star product of their symbols.

# In[3]:

f = SymbolPoly.var(2, 1, "y") ** 2 * SymbolPoly.var(2, 2, "x")
g = SymbolPoly.var(2, 1, "x") ** 3
print(normal_order(f) * normal_order(g) == star_multiply(f, g))


# The leading symbol of a commutator is a Poisson bracket.

# In[4]:

u, v = normal_order(f), normal_order(g)
bracket = (u * v - v * u) * WeylElement.hbar(2, -2)
print(symbol(bracket, 0), "|", f.poisson(g))


# # Reduction to the generalized Weyl algebra
#
# For l = 3 the invariant generators reduce to a, b, h with
# ab = P_ab(h) and ba = P_ab(h + 1).

# In[5]:

from cherednik_zl.reduction import gwa_presentation, s_values

c = (Fraction(1, 3), Fraction(1, 5), Fraction(-8, 15))
pab, pba = gwa_presentation(c)
print("roots of P_ab:", [str(s) for s in s_values(c)])
print("P_ab =", pab.coeffs)
print("P_ba =", pba.coeffs)


# # Charts
#
# Chart j carries coordinates (f_j, g_j) with [g_j, f_j] = h.

# In[6]:

from cherednik_zl.reduction import quantized_transition
from cherednik_zl.toric import c_tilde, ordering_eta

eta = ordering_eta((-1, -1, 2))
print("eta =", eta, " c~ =", [str(t) for t in c_tilde(c, eta)])
for j in (1, 2):
    F, G = quantized_transition(j, c, eta)
    print(f"chart {j} -> {j + 1}:  F = {F}   G = {G}")
