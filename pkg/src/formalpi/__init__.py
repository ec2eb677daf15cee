"""Formal (Feynman-diagrammatic) expansion of finite-dimensional Laplace and
oscillatory integrals, and its behaviour under coordinate changes."""

from .coord import (
    JacobianJet,
    PartitionSet,
    compose_jets,
    divergence_jet,
    enumerate_partitions,
    infinitesimal_map,
    invert_jet,
    is_volume_preserving,
    jacobian_determinant_jet,
    moser_homotopy,
    pushforward_action,
)
from .diagrams import (
    DiagramClass,
    FeynmanDiagram,
    automorphism_count,
    connected_components,
    disjoint_union,
    enumerate_diagrams,
    enumerate_marked_diagrams,
    is_isomorphic,
)
from .errors import (
    DegenerateCriticalPoint,
    DimensionMismatch,
    NotCriticalPoint,
    NotInvertible,
    PreconditionError,
    QuadraturePrecisionError,
    TruncationExceeded,
)
from .feynman import (
    FormalSeries,
    Prefactor,
    diagram_sum,
    evaluate_diagram,
    prefactor,
    required_truncation,
    series_exp,
    series_log,
    vertex_weight,
)
from .invariance import InvarianceReport, check_invariance, first_variation, trace_terms
from .jets import (
    ActionJet,
    MapJet,
    ScalarJet,
    SymmetricTensor,
    contract,
    evaluate_jet,
    hessian_determinant,
    hessian_inverse,
    hessian_signature,
)
from .oracles import (
    QuadratureResult,
    laplace_quadrature,
    moment_expansion,
    operator_expansion,
)
from .poly import Polynomial
from .scalars import EPS, Dual, GaussianRational

__version__ = "0.1.0"
