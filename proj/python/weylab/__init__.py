"""Numerical laboratory for Weyl and t-quantizations."""

from ._weylab import *  # noqa: F401,F403
from ._weylab import __doc__ as _core_doc

__doc__ = _core_doc
