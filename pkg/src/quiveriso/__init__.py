"""Isometry of quiver representations via traces of oriented cycles.

Two systems of linear maps between inner product spaces (or complex
Euclidean spaces) are isometric exactly when the traces along all oriented
cycles of the doubled quiver agree.  This package enumerates those cycles,
compares the traces, and provides the single-matrix reduction as an
independent route.
"""

from .corollaries import (
    ProblemKind,
    TupleProblem,
    as_quiver_problem,
    block_check,
    jing_check,
    specht_check,
    star_check,
    wiegmann_check,
)
from .cycles import OrientedCycle, canonicalize, cycle_trace, cycle_traces, enumerate_cycles
from .decision import (
    BoundFunction,
    IsometryVerdict,
    TraceSignature,
    compare_signatures,
    compute_signature,
    cycle_length_bound,
    decide_isometry,
    phi,
)
from .errors import (
    BudgetExceeded,
    CycleError,
    QuiverError,
    RepresentationError,
    SignatureMismatch,
)
from .quiver import (
    Arrow,
    DoubledQuiver,
    Quiver,
    complete_quiver,
    double,
    loop_quiver,
    min_r,
    multiplicities,
    parallel_quiver,
    star_quiver,
    validate_quiver,
)
from .reduction import (
    ReductionMatrix,
    ReductionTemplate,
    block_similarity_witness,
    build_mq,
    build_template,
    mq_word_signature,
)
from .representation import (
    FieldMode,
    IsometryFamily,
    MatrixRepresentation,
    StarMode,
    extend_to_double,
    perturb,
    random_isometry_family,
    random_representation,
    star,
    transform,
    validate_representation,
)

__version__ = "0.1.0"
