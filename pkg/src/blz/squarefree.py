"""Square-free ternary words and the hop-bound lower bound on parsing size."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import Parsing, Symbols, compute_hops, require_valid
from .parsers import greedy_lz76

THUE_MORPHISM = {0: (0, 1, 2), 1: (0, 2), 2: (1,)}


def thue_word(length: int) -> tuple[int, ...]:
    """Prefix of the fixed point of 0 -> 012, 1 -> 02, 2 -> 1."""
    if length < 0:
        raise ValueError("length must be non-negative")
    word = [0]
    while len(word) < length:
        word = [y for x in word for y in THUE_MORPHISM[x]]
    return tuple(word[:length])


def is_square_free(s: Symbols) -> bool:
    return not kernels.has_square(s)


def iroot_ceil(n: int, k: int) -> int:
    """Smallest r >= 0 with r**k >= n."""
    if n <= 0:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r**k < n:
        r += 1
    while r > 0 and (r - 1) ** k >= n:
        r -= 1
    return r


def lower_bound(n: int, c: int) -> int:
    """ceil(n ** (1 / (c + 1))) - 1, in exact integer arithmetic."""
    return iroot_ceil(n, c + 1) - 1


@dataclass(frozen=True)
class BoundReport:
    n: int
    c: int
    parsing_size: int
    lower_bound: int
    lz76_size: int
    ratio: float
    hop_max: int

    @property
    def passed(self) -> bool:
        return self.parsing_size >= self.lower_bound


def audit_lower_bound(s: Symbols, c: int, phi: Parsing) -> BoundReport:
    if c < 0:
        raise ValueError("hop bound must be non-negative")
    if not is_square_free(s):
        raise ValueError("input is not square-free; the bound does not apply")
    require_valid(s, phi)
    prof = compute_hops(s, phi, check=False)
    if prof.hop_max > c:
        raise ValueError(f"parsing has hop_max {prof.hop_max} > c = {c}")
    z = len(greedy_lz76(s))
    return BoundReport(
        n=len(s),
        c=c,
        parsing_size=len(phi),
        lower_bound=lower_bound(len(s), c),
        lz76_size=z,
        ratio=len(phi) / z if z else 0.0,
        hop_max=prof.hop_max,
    )
