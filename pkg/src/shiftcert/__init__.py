"""Exact subnormality certificates for weighted shifts.

The package works over the rationals end to end: weight sequences and
planar weight diagrams, finitely atomic representing measures and their
marginal/extremal/restriction calculus, backward-extension tests in one
and two variables, Hankel and Agler positivity checks, and a certified
parameter range for the subnormality of a rescaled shift sum.

Everything decision-bearing returns a :class:`~shiftcert.certificate.Certificate`
(or a structured report) carrying an exact witness, so a failure can be
replayed by hand.
"""

from .certificate import Certificate
from .errors import (
    InconsistentMomentsError,
    InfiniteReciprocalNormError,
    NegativeMassError,
    NoRationalAtomsError,
    QuadratureConvergenceError,
    RankExceededError,
    ShiftCertError,
    ZeroMomentError,
)
from .measures import (
    INFINITE,
    AtomicMeasure1D,
    AtomicMeasure2D,
    dominates,
    domination_scale_bound,
    dump_measure,
    extremal,
    is_infinite,
    load_measure,
    marginal,
    marginal_reciprocal_identity,
    measure_from_dict,
    measure_to_dict,
    moment1,
    moment2,
    reciprocal_norm,
    restrict_density,
)
from .numerics import (
    SymmetricExactMatrix,
    alternating_binomial_sum,
    arcsine_moment_quadrature,
    chu_vandermonde_check,
    is_psd,
    parse_rational,
    rat_str,
)
from .shift1d import (
    MomentSequence,
    WeightSequence1D,
    agler_sums_1d,
    backward_extension_1d,
    berger_fit,
    moments_from_weights,
    restrict,
    subnormal_necessary,
    weights_from_measure,
)
from .shift2d import (
    BackwardExtensionReport,
    MomentTable2D,
    WeightDiagram,
    backward_extension_2d,
    check_berger_2d,
    commutativity_check,
    joint_hyponormality_window,
    path_independence_check,
    tensor_diagram,
    weights_from_moments2d,
)
from .lubin import (
    PAIR_THRESHOLD,
    T2_THRESHOLD,
    LubinFamily,
    family_report,
    is_pair_subnormal,
    is_t1_subnormal,
    is_t2_subnormal,
    threshold_pair,
    threshold_t1,
    threshold_t2,
)
from .agler import (
    AglerCertificate,
    certified_epsilon,
    certified_x_max,
    certify_sum,
    integral_moment,
    p_n_bruteforce,
    p_n_closed,
    positivity_over_all_k,
    tail_stopping_index,
)

__version__ = "0.1.0"

__all__ = [
    "AglerCertificate",
    "AtomicMeasure1D",
    "AtomicMeasure2D",
    "BackwardExtensionReport",
    "Certificate",
    "INFINITE",
    "InconsistentMomentsError",
    "InfiniteReciprocalNormError",
    "LubinFamily",
    "MomentSequence",
    "MomentTable2D",
    "NegativeMassError",
    "NoRationalAtomsError",
    "PAIR_THRESHOLD",
    "QuadratureConvergenceError",
    "RankExceededError",
    "ShiftCertError",
    "SymmetricExactMatrix",
    "T2_THRESHOLD",
    "WeightDiagram",
    "WeightSequence1D",
    "ZeroMomentError",
    "agler_sums_1d",
    "alternating_binomial_sum",
    "arcsine_moment_quadrature",
    "backward_extension_1d",
    "backward_extension_2d",
    "berger_fit",
    "certified_epsilon",
    "certified_x_max",
    "certify_sum",
    "check_berger_2d",
    "chu_vandermonde_check",
    "commutativity_check",
    "dominates",
    "domination_scale_bound",
    "dump_measure",
    "extremal",
    "family_report",
    "integral_moment",
    "is_infinite",
    "is_pair_subnormal",
    "is_psd",
    "is_t1_subnormal",
    "is_t2_subnormal",
    "joint_hyponormality_window",
    "load_measure",
    "marginal",
    "marginal_reciprocal_identity",
    "measure_from_dict",
    "measure_to_dict",
    "moment1",
    "moment2",
    "moments_from_weights",
    "p_n_bruteforce",
    "p_n_closed",
    "parse_rational",
    "path_independence_check",
    "positivity_over_all_k",
    "rat_str",
    "reciprocal_norm",
    "restrict",
    "restrict_density",
    "subnormal_necessary",
    "tail_stopping_index",
    "tensor_diagram",
    "threshold_pair",
    "threshold_t1",
    "threshold_t2",
    "weights_from_measure",
    "weights_from_moments2d",
]
