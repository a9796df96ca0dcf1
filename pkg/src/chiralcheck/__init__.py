"""Chirality obstructions for knots from the homology of the double branched cover.

>>> from chiralcheck import full_report
>>> full_report("6_1", [[1, 0], [1, -2]]).verdict
<Verdict.OBSTRUCTED: 'OBSTRUCTED'>
"""
from .errors import (
    ChiralCheckError,
    InconsistentKnotDataError,
    InfiniteHomologyError,
    InvalidKnotDataError,
    OracleBoundExceeded,
    ParseError,
    SingularFormError,
    SingularMatrixError,
)
from .forms import (
    CyclicLinkingForm,
    TorsionLinkingForm,
    brute_force_self_negation_isometric,
    cyclic_isometric,
    cyclic_parameter,
    linking_form_from_seifert,
    negate,
    restrict_to_primary,
)
from .groups import AbelianGroup, PrimaryPart, group_from_presentation, order, primary_part
from .knotio import emit_report, parse_seifert_text, parse_table_csv, scan_table
from .linalg import IntMatrix, SmithDecomposition, determinant, rational_inverse, smith_normal_form
from .numtheory import factorize, is_quadratic_residue, mod4_class
from .obstruction import (
    ChiralityReport,
    PrimeEvidence,
    Verdict,
    determinant_from_alexander,
    full_report,
    goeritz_check,
    goeritz_strong_check,
    theorem1_check,
)

__version__ = "0.1.0"
