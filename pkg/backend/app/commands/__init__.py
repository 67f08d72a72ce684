"""CLI command groups."""

from .context import RunContext, common_parser
from .figure1 import register as register_figure1
from .limits import register as register_limits
from .verify import register as register_verify
from .xsec import register as register_xsec

__all__ = [
    "RunContext",
    "common_parser",
    "register_xsec",
    "register_limits",
    "register_figure1",
    "register_verify",
]
