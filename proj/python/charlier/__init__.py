"""Recurrence coefficients of generalized Charlier weights.

Numbers cross the boundary as decimal strings so no precision is lost;
convert with ``mpmath.mpf`` or ``decimal.Decimal`` as needed.
"""

import json

from ._charlier import (
    DomainError,
    Error,
    IntegrationError,
    PrecisionError,
    SingularityError,
    initial_b0,
    recurrence,
    riccati_residual,
    suite_names,
)
from ._charlier import _verify_json

__all__ = [
    "DomainError",
    "Error",
    "IntegrationError",
    "PrecisionError",
    "SingularityError",
    "initial_b0",
    "recurrence",
    "riccati_residual",
    "suite_names",
    "verify",
]


def verify(suite="all", *, a=None, beta=None, lattices=None, tau=None, n_max=10, prec_bits=512):
    """Run a verification suite and return the report as a dict."""
    as_list = lambda v: None if v is None else [str(x) for x in v]
    text = _verify_json(suite, as_list(a), as_list(beta), as_list(lattices), as_list(tau), n_max, prec_bits)
    return json.loads(text)
