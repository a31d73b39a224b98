# %% [markdown]
# # Integrals over the contact quotient
#
# For a circle action with 0 a regular value of the moment map, integrals over
# the quotient come from residues of the equivariant pushforward.

# %%
from fractions import Fraction

import contactloc as cl

sphere = cl.WeightedSphere((Fraction(3, 2), Fraction(1)), (-1, 1))

# %% [markdown]
# The pushforward is a sum of exponentials times Laurent polynomials, one term
# per critical circle.

# %%
for t in cl.pushforward(sphere, 1):
    print(t.exponent_lambda, t.amplitude.laurent())

# %% [markdown]
# Only terms with a positive exponent contribute for the cone t > 0. The
# opposite cone gives the same number.

# %%
print(cl.quotient_pairing(sphere, 1, cone=+1), cl.quotient_pairing(sphere, 1, cone=-1))

# %% [markdown]
# The answer only sees the constant term of the class, which is 2 pi c / (1 + w)
# for S^3(w, 1).

# %%
eta = cl.parse_poly("7/3 + u*s - 5*s^2")
print(cl.quotient_pairing(sphere, eta))
print(cl.quotient_pairing(sphere, sphere.ideal_generator()))

# %% [markdown]
# A larger example with isotropy: gcd of the weights enters as n0.

# %%
big = cl.WeightedSphere((Fraction(1), Fraction(2), Fraction(3)), (-2, 2, 4))
print(cl.regular_isotropy_order(big), cl.quotient_pairing(big, 1))
