"""Pole-swapping eigenvalue solver for upper Hessenberg matrices.

The matrix eigenvalue problem is treated as the Hessenberg pencil
``A - lambda U`` with ``U`` a unitary Hessenberg matrix kept in
factored form as a descending product of core transformations.  Shifts
enter at the top of the active window and are swapped down; poles
enter at the bottom and drift up, so deflations happen at both ends.
A single-shift QR driver with the same reporting is included as a
baseline, along with matrix generators, a Matrix Market reader, and a
benchmark harness.
"""

from .harness import BackwardErrorReport, backward_error, run_bench, unitarity_defect
from .matio import (
    CSV_HEADER,
    BenchRow,
    MatrixMarketError,
    MatrixSource,
    gen_iplusj,
    gen_random_hessenberg,
    read_matrix_market,
    reduce_to_hessenberg,
    trial_seed,
    write_csv,
)
from .moves import (
    DeflatableSwapError,
    TransformRecorder,
    move_type1_bottom,
    move_type1_top,
    move_type2_swap,
    triangularize_2x2,
)
from .pencil import HessenbergPencil, ProjectiveValue, as_hessenberg, chordal_distance
from .rotations import (
    EPS,
    CoreTransformation,
    PositionedCore,
    apply_left,
    apply_right,
    embed,
    fuse,
    left_eliminator,
    right_eliminator,
    turnover,
)
from .solver import (
    DeflationCriterion,
    ShiftStrategy,
    SolveDiagnostics,
    SolveReport,
    deflation_scan,
    eig2x2_pencil,
    extract_eigenvalue,
    qr_solve,
    rayleigh_pole,
    rayleigh_shift,
    rqr_solve,
    wilkinson_pole,
    wilkinson_shift,
)
from .unitary import FactoredUnitary

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "EPS",
    "CoreTransformation",
    "PositionedCore",
    "left_eliminator",
    "right_eliminator",
    "fuse",
    "turnover",
    "apply_left",
    "apply_right",
    "embed",
    "FactoredUnitary",
    "HessenbergPencil",
    "ProjectiveValue",
    "as_hessenberg",
    "chordal_distance",
    "DeflatableSwapError",
    "TransformRecorder",
    "move_type1_top",
    "move_type1_bottom",
    "move_type2_swap",
    "triangularize_2x2",
    "ShiftStrategy",
    "DeflationCriterion",
    "SolveDiagnostics",
    "SolveReport",
    "eig2x2_pencil",
    "rayleigh_shift",
    "rayleigh_pole",
    "wilkinson_shift",
    "wilkinson_pole",
    "deflation_scan",
    "extract_eigenvalue",
    "rqr_solve",
    "qr_solve",
    "MatrixMarketError",
    "MatrixSource",
    "BenchRow",
    "CSV_HEADER",
    "write_csv",
    "reduce_to_hessenberg",
    "gen_random_hessenberg",
    "gen_iplusj",
    "trial_seed",
    "read_matrix_market",
    "BackwardErrorReport",
    "backward_error",
    "unitarity_defect",
    "run_bench",
]
