"""Linear optimization, duality mappings and ball projections in Bochner spaces L_p(S; X).

The measure space is a finite list of atoms and X is R^d with an l_p norm,
so every element is a simple function and every formula is evaluated exactly.
"""

from .errors import BochnerError, ConfigurationError, DomainError
from .tolerance import DEFAULT_TOL, ToleranceConfig
from .xspace import (
    DualXVector, ExponentPair, PVector, XConfig,
    j_x, j_x_star, x_dual_norm, x_norm, x_pair,
)
from .bochner import (
    DualSimpleFunction, MeasureSpace, SimpleFunction,
    embed, j_p, j_q_star, linear_combine, lp_norm, lq_norm, pair, support,
)
from .sets import BallSpec, Cone, ConvexSetSpec, Polytope, SubdomainBall, Subspace
from .projections import (
    VICertificate, ball_sampler, certify_vi_gpi, certify_vi_metric, certify_vi_pi,
    gpi_ball, lyapunov_v, metric_proj_ball, pi_ball,
)
from .optimize import (
    NonconvexityReport, OptimalClass, SolutionKind, SolutionSet,
    classify_ball_point, inverse_image_ball, inverse_image_star_ball,
    is_self_optimal, membership_in_solution, nonconvexity_demo, perp, solve,
)
from .oracle import (
    SampleBudget, brute_lyapunov_min, brute_metric_proj, brute_sup,
    sample_set, sample_solution, set_sampler,
)

__version__ = "0.1.0"
