# %% [markdown]
# # Contact volume of a weighted sphere
#
# The weighted contact form on S^{2n+1} has a Reeb flow that rotates each
# coordinate with speed w_j. Its volume can be read off from the fixed circles
# of an auxiliary circle action, without integrating anything.

# %%
from fractions import Fraction

import contactloc as cl

sphere = cl.WeightedSphere((Fraction(3, 2), Fraction(1)), (-1, 1))
print(sphere.lambdas)

# %% [markdown]
# Each coordinate circle is critical for the moment map. Its Euler class,
# its moment value and the restriction rule s -> slope * u are all exact.

# %%
for c in cl.critical_circles(sphere):
    print(c.index, c.mu_value, cl.format_poly(c.euler_class), c.restriction_slope)

# %% [markdown]
# Pairing alpha with s^n gives int alpha ^ (d alpha)^n. Dividing by 2^n n!
# recovers the volume. The closed form 2 pi^(n+1) / (n! prod w) agrees.

# %%
print(cl.pair_alpha_eta(sphere, cl.S))
print(cl.contact_volume(sphere), cl.closed_form_volume(sphere))

# %%
for w in [(1, 1), (2, 3), (1, 1, 1), (1, 2, 3, 4)]:
    s = cl.WeightedSphere(tuple(Fraction(x) for x in w), (0,) * len(w))
    print(w, cl.contact_volume(s))

# %% [markdown]
# A Monte Carlo estimate, for comparison. Uniform points are weighted by
# h^-(n+1) with h = sum w_j |z_j|^2.

# %%
est = cl.mc_contact_volume(sphere, cl.McConfig(samples=200_000))
print(est.value, "+-", est.stderr, "exact", float(cl.closed_form_volume(sphere)))
