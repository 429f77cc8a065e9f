"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``FFDIST_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("FFDIST_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

IMPLEMENTATION = _impl.IMPLEMENTATION
cycle_stats = _impl.cycle_stats
cycle_summary = _impl.cycle_summary
capping_sweep = _impl.capping_sweep
bb_search = _impl.bb_search

EXT_STEP = _pykernels.EXT_STEP
CAP_STEP = _pykernels.CAP_STEP
INDEL_A_STEP = _pykernels.INDEL_A_STEP
INDEL_B_STEP = _pykernels.INDEL_B_STEP
STATUS_OPTIMAL = _pykernels.STATUS_OPTIMAL
STATUS_INFEASIBLE = _pykernels.STATUS_INFEASIBLE
STATUS_LIMIT = _pykernels.STATUS_LIMIT


def implementations():
    """All importable kernel modules, pure Python first."""
    out = [_pykernels]
    try:
        from . import _ckernels

        out.append(_ckernels)
    except ImportError:
        pass
    return out
