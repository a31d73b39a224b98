# %% [markdown]
# # Duistermaat-Heckman distribution
#
# The Fourier transform of the pushforward is a piecewise polynomial in y,
# supported on -mu(M). We store it exactly and compare with a weighted
# histogram of -mu under the contact volume form.

# %%
from fractions import Fraction

import numpy as np

import contactloc as cl

sphere = cl.WeightedSphere((Fraction(1), Fraction(2), Fraction(3)), (-1, 1, 2))
Q = cl.dh_distribution(sphere)
print(Q.breakpoints)
for p in Q.pieces:
    print(cl.format_poly(p))

# %% [markdown]
# The stored pieces are Q / sqrt(2 pi). Dividing by i^n gives the real density.

# %%
h = cl.mc_dh_histogram(sphere, cl.McConfig(samples=1_000_000, histogram_bins=12))
exact = (Q.bin_averages(h.edges) / (1j) ** sphere.n).real
for lo, d, e in zip(h.edges[:-1], h.density, exact):
    print(f"{lo:+.3f}  mc {d:9.4f}  exact {e:9.4f}")

# %% [markdown]
# Its total mass is i^n 2^n times the contact volume.

# %%
print(Q.reduced_integral(), cl.i_power(sphere.n) * 2 ** sphere.n * cl.closed_form_volume(sphere))
print(h.total_mass, np.sum(h.density * np.diff(h.edges)))
