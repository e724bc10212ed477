"""Kernel selection: the compiled extension when built, else pure Python.

Set ``BLZ_PURE_PYTHON=1`` to force the fallback.
"""

import os
from array import array

from . import _pykernels

IMPLEMENTATION = "python"
_impl = _pykernels

if not os.environ.get("BLZ_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        IMPLEMENTATION = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def buffer(seq) -> array:
    """Pack a symbol or hop sequence into the int64 buffer the kernels take."""
    if isinstance(seq, array) and seq.typecode == "q":
        return seq
    return array("q", seq)


def greedy_lz76(s):
    return _impl.greedy_lz76(buffer(s))


def greedy_blz(s, c):
    return _impl.greedy_blz(buffer(s), c)


def longest_copy(s, i):
    return _impl.longest_copy(buffer(s), i)


def longest_phrase_lengths(s):
    return _impl.longest_phrase_lengths(buffer(s))


def source_extents(s, hops, i, max_src_hop):
    return _impl.source_extents(buffer(s), buffer(hops), i, max_src_hop)


def has_square(s):
    return _impl.has_square(buffer(s))


def implementations():
    """Available kernel modules keyed by name (for benchmarks and tests)."""
    found = {"python": _pykernels}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
