"""Exact skew completions of unimodular rows and elementary Witt-class certificates."""

from .completion import (
    CertifiedRow,
    CompletionResult,
    certify_row,
    krusemeyer_complete,
    power_first,
    power_last,
    skew4,
    skew_from_completion,
    square_witt_rep,
    tangent_check,
    verify_completion,
)
from .errors import SkewcompError
from .matrices import ElementaryWord, Matrix, adjugate, apply_word, det, expand_word
from .pfaffian import AlternatingMatrix, check_alternating, congruence, pfaffian, psi
from .rings import enumerate_elements, is_unit, normal_form, parse_element, parse_ring
from .witt import EquivCertificate, check_equiv, search_equiv, witt_rep

__version__ = "0.1.0"
