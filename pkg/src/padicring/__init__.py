"""Exact bounded-precision p-adic computations for rings of continuous Q_p-valued functions."""

from .errors import (
    DivisionByZero,
    FormatError,
    InsufficientPrecision,
    NotOneUnit,
    PAdicError,
    SpaceMismatch,
    UndecidedError,
    UnsupportedExponent,
    UnsupportedTarget,
    WindowExceeded,
)
from .logic import Verdict
from .padic import (
    DEFAULT_PRECISION,
    INF,
    PAdic,
    embed_rational,
    in_ball,
    kochen_gamma,
    norm_abs,
    vp_rational,
)

__version__ = "0.1.0"
