"""Kernel selection: compiled blade kernels when importable, else pure Python.

Set ``HPFIELD_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("HPFIELD_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels

merge_sign = _impl.merge_sign
wedge_terms = _impl.wedge_terms
contract_terms = _impl.contract_terms
pair_terms = _impl.pair_terms


def use_backend(name: str) -> str:
    """Switch kernels at runtime (``"python"`` or ``"compiled"``); returns the
    previous backend name.  Intended for benchmarks and cross-checking tests."""
    global BACKEND, merge_sign, wedge_terms, contract_terms, pair_terms
    previous = BACKEND
    if name == "python":
        impl = _pykernels
    elif name == "compiled":
        from . import _ckernels as impl  # raises ImportError if not built
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    BACKEND = name
    merge_sign, wedge_terms = impl.merge_sign, impl.wedge_terms
    contract_terms, pair_terms = impl.contract_terms, impl.pair_terms
    return previous


def compiled_available() -> bool:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
