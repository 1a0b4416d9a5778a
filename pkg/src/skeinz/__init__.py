"""Exact skein-theoretic computation of z(M) in Q[[A+1]] for +-1 surgery on knots."""

__version__ = "0.1.0"

from .series import LaurentPoly, HLaurent, lp_to_h, rebase_q4, subst_Ainv  # noqa: E402
from .diagram import KnotPresentation, SliceDiagram, builtin  # noqa: E402
from .oracle import bracket, colored_bracket, loop_value, twist_monomial, CapacityError  # noqa: E402
from .pipeline import SurgeryInput, InvariantSeries, pair_invariant, stabilize, casson, connected_sum  # noqa: E402

__all__ = [
    "LaurentPoly", "HLaurent", "lp_to_h", "rebase_q4", "subst_Ainv",
    "KnotPresentation", "SliceDiagram", "builtin",
    "bracket", "colored_bracket", "loop_value", "twist_monomial", "CapacityError",
    "SurgeryInput", "InvariantSeries", "pair_invariant", "stabilize", "casson", "connected_sum",
]
