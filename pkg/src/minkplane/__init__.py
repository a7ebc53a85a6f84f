"""minkplane: geometry of the plane under an arbitrary norm.

Exact polygonal unit balls (rational arithmetic) and numeric p-norm / custom
gauges behind one interface: norm-circle intersection, unique-regular-triangle
classification with witnesses, sphere maps and d-probes, and a certified
ledger replaying distance-propagation derivations with validated point
configurations.
"""

from .geom import (
    DEFAULT_TOL,
    HullLocation,
    Line,
    MixedBackendError,
    Orientation,
    Point2,
    Scalar,
    Segment,
    convex_hull,
    in_convex_hull,
    orientation,
    segment_intersection,
)
from .norms import (
    CustomGaugeNorm,
    Norm,
    NormValidationError,
    PNorm,
    PolygonNorm,
    SphereSegment,
    diamond_norm,
    dump_norm,
    hexagon_norm,
    load_norm,
    norm_from_jsonable,
    norm_to_jsonable,
    octagon_norm,
    parse_norm,
    save_norm,
    square_norm,
)
from .circles import (
    DegenerateCircleError,
    SolutionSet,
    SolverConfig,
    TwoRadiusError,
    intersect_circles,
    solution_residual,
    two_radius_point,
)
from .classify import (
    SamplingReport,
    UrtcVerdict,
    Verdict,
    classify,
    counterexample_pair,
    sampling_check,
)
from .probe import (
    DProbe,
    NotUrtcError,
    ProbeReport,
    RegularPositionError,
    SphereError,
    SphereMapResult,
    build_probe,
    checked_sphere_map,
    sphere_map_f,
    sphere_map_g,
    validate_probe,
)
from .propagate import (
    AffineMap,
    CandidateMap,
    ComposedMap,
    Fact,
    Ledger,
    LedgerError,
    LedgerImportError,
    LinearMap,
    PointwiseMap,
    TabulatedMap,
    VerifyReport,
    WitnessConfig,
    WitnessValidationError,
    derive_midpoint_rule,
    derive_rational,
    derive_scale_down,
    derive_scale_up,
    new_ledger,
    read_ledger,
    squeeze_bound,
    verify_map,
    write_ledger,
)
from .render import render_norm, render_probe

__version__ = "0.1.0"
