# %% [markdown]
# # The Gaussian-damped integral I(eps)
#
# Damping the distribution by exp(-y^2 / 2 eps) and letting eps shrink
# isolates the polynomial near y = 0. What is left decays like
# eps^(-1/2) exp(-c / eps).

# %%
from fractions import Fraction

import contactloc as cl
from contactloc.dh import asymptotic_report

sphere = cl.WeightedSphere((Fraction(3, 2), Fraction(1)), (-1, 1))
rep = asymptotic_report(sphere, 1, [0.2, 0.1, 0.05, 0.025])
print("limit", rep.limit, complex(rep.limit))
for e, v, r in zip(rep.epsilons, rep.I_values, rep.residuals):
    print(f"eps={e:<6} I={v.real:.12f}{v.imag:+.2e}j  |I - limit|={r:.3e}")
print("c =", rep.decay_exponent_estimate, "R^2 =", rep.r_squared)

# %% [markdown]
# With a sloped piece through 0 the local part is a polynomial in eps rather
# than a constant.

# %%
other = cl.WeightedSphere((Fraction(1), Fraction(2), Fraction(3)), (-1, 1, 2))
rep2 = asymptotic_report(other, 1, [0.1, 0.05, 0.025, 0.0125])
print(cl.format_poly(rep2.local_polynomial))
print(rep2.residuals)

# %% [markdown]
# The tail estimate used in the decay argument, against quadrature.

# %%
import math
from scipy import integrate

for n in range(4):
    num = integrate.quad(lambda x: x ** n * math.exp(-x * x), 1.0, math.inf)[0]
    print(n, num, cl.gaussian_tail_bound(n, 1.0, 1.0))
