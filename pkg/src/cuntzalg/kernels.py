"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module.  Setting ``CUNTZALG_PURE_PYTHON=1`` forces
the fallback.
"""
import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("CUNTZALG_PURE_PYTHON", "") not in ("", "0"):
    _active = _pykernels
else:
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None
    _active = compiled_backend or _pykernels

BACKEND = "cython" if _active is compiled_backend else "python"

mono_mul = _active.mono_mul
prune = _active.prune
add_terms = _active.add_terms
mul_terms = _active.mul_terms
expand_terms = _active.expand_terms
collapse_terms = _active.collapse_terms
star_terms = _active.star_terms
shift_terms = _active.shift_terms
census_product = _active.census_product
