"""Exact tools for polynomial vector fields on the Clifford torus in R^4."""

__version__ = "0.1.0"

from .arith import *  # noqa: F401,F403
from .upoly import *  # noqa: F401,F403
from .mpoly import *  # noqa: F401,F403
from .field import *  # noqa: F401,F403
from .extactic import *  # noqa: F401,F403
from .torus import *  # noqa: F401,F403
from .errors import (DoesNotDivide, ExtacticIdenticallyZero, NotInvariant, ParseError,  # noqa: F401
                     StepTooLarge, ZeroPolynomialError)
from .parser import parse_poly, format_poly  # noqa: F401
from .document import FieldDocument, DocumentError  # noqa: F401
