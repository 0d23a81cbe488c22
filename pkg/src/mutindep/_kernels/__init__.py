"""Hot numeric kernels with a compiled core and a pure-numpy fallback.

The compiled extension (`_fast`, Cython) is preferred when importable; the
numpy implementation (`_pure`) has identical semantics and is used when the
extension is missing.  Set MUTINDEP_KERNELS=c or MUTINDEP_KERNELS=python to
force a backend (forcing "c" raises if the extension is absent).
"""

import os


def load_backend(name):
    """Import a kernel backend by name ("c" or "python")."""
    if name == "python":
        from . import _pure

        return _pure
    if name == "c":
        from . import _fast

        return _fast
    raise ValueError(f"unknown kernel backend {name!r} (use 'c' or 'python')")


def _select():
    forced = os.environ.get("MUTINDEP_KERNELS", "").strip().lower()
    if forced:
        return load_backend(forced)
    try:
        from . import _fast

        return _fast
    except ImportError:
        from . import _pure

        return _pure


_impl = _select()

BACKEND = _impl.BACKEND
logdet_spd = _impl.logdet_spd
mdi_statistic_batch = _impl.mdi_statistic_batch
