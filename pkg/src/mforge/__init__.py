"""Symbolic and matrix-level verification of the correspondence calculus for a
smooth theta divisor: Chow-Kunneth projectors and the motivic Lefschetz
hyperplane theorem."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    CompositionError,
    Expression,
    Generator,
    Gens,
    HomogeneityError,
    IndexRangeError,
    Kind,
    MforgeError,
    Motive,
    Obj,
    Tag,
    compose,
    format_expr,
    hom_typecheck,
    linear_combine,
)
from .dsl import GRAMMAR_VERSION, DSLSyntaxError, DSLTypeError, parse  # noqa: E402
from .hodge import (  # noqa: E402
    HodgeProfile,
    betti_theta,
    euler_char_theta,
    geometric_genus_theta,
    hodge_level_bound,
    hodge_profile,
    primitive_middle_dim,
)
from .named import complementary_projectors, inverse_candidate, lefschetz_morphism, theta_projector  # noqa: E402
from .realization import kunneth_check, realize, soundness_check, theta_model  # noqa: E402
from .report import VerificationReport  # noqa: E402
from .rewrite import RewriteSystem, corrupted_rules, equal, normalize, standard_rules  # noqa: E402
from .verify import SuiteOptions, chow_kunneth_suite, motivic_lefschetz_suite, run_suite  # noqa: E402
