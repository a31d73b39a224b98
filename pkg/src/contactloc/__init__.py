"""Equivariant localization, residues and Duistermaat-Heckman data for
weighted Sasakian spheres, with a Monte Carlo cross-check."""
from .errors import (ContactLocError, DegenerateCriticalSet, LambdaZero,
                     MathPreconditionError, NonPolynomialResult)
from .exact import I, ONE, PI, TWO_PI, ZERO, ExactScalar, i_power
from .poly import Poly, RationalFn, residue_at_zero
from .textform import ParseError, format_poly, format_scalar, parse_poly, parse_scalar
from .sphere import (S, U, CriticalCircle, EquivariantClass, WeightedSphere, check_zero_regular,
                     class_reduce, critical_circles, moment_map, regular_isotropy_order)
from .localization import (LocalizationTerm, closed_form_volume, contact_volume,
                           evaluate_pushforward, localization_identity_sum, pair_alpha_eta,
                           pushforward)
from .residue import VOLUME_OF_G, jkres, quotient_pairing
from .dh import (AsymptoticReport, PiecewisePolynomial, I_epsilon, asymptotic_report,
                 dh_distribution, gaussian_tail_bound)
from .mc import Histogram, McConfig, McEstimate, mc_contact_volume, mc_dh_histogram

__version__ = "0.1.0"
