"""Kernel backend selection.

The compiled Cython module `twoxor.kernels._fast` implements the same
functions as `twoxor.kernels.pure`, bit for bit.  The fast backend is used
when it imported cleanly and the environment variable TWOXOR_PURE_PYTHON is
not set to 1.  `backend_name()` reports which one is active; both modules
stay importable so the benchmark can compare them side by side.
"""

import os

from . import pure

_impl = pure
if os.environ.get("TWOXOR_PURE_PYTHON") != "1":
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure


def backend_name() -> str:
    return getattr(_impl, "BACKEND", "pure")


def mc_expression_trials(n, m, start, count, seed):
    return _impl.mc_expression_trials(n, m, start, count, seed)


def mc_multigraph_trials(n, m, start, count, seed):
    return _impl.mc_multigraph_trials(n, m, start, count, seed)


def oracle_scan(n, m, start, count):
    return _impl.oracle_scan(n, m, start, count)


def chain_mod(kind, sig_num, sig_den, m_max, vcap, p, harvests):
    return _impl.chain_mod(kind, sig_num, sig_den, m_max, vcap, p, harvests)
