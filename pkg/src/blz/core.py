"""Strings, LZ parsings, hop numbers and the triple encoding.

All positions in this module are 1-based and ranges are inclusive.  A
string is any sequence of non-negative integer symbol ids; a
:class:`SymbolTable` maps ids to printable token names when needed.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

Symbols = Sequence[int]


class InvalidParsing(ValueError):
    """Raised when an operation needs a valid parsing and does not get one."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        shown = "; ".join(violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"invalid parsing: {shown}{more}")


class MalformedStream(ValueError):
    """A triple sequence that does not describe any string."""


@dataclass
class SymbolTable:
    """Dense id <-> name mapping for the tokens of one alphabet."""

    names: list[str] = field(default_factory=list)
    _ids: dict[str, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._ids = {}
        for i, name in enumerate(self.names):
            if name in self._ids:
                raise ValueError(f"duplicate symbol name {name!r}")
            self._ids[name] = i

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def add(self, name: str) -> int:
        if name in self._ids:
            raise ValueError(f"duplicate symbol name {name!r}")
        if not name or any(ch.isspace() for ch in name):
            raise ValueError(f"symbol name must be a non-empty token: {name!r}")
        self._ids[name] = len(self.names)
        self.names.append(name)
        return self._ids[name]

    def intern(self, name: str) -> int:
        """Return the id of ``name``, adding it if it is new."""
        if name in self._ids:
            return self._ids[name]
        return self.add(name)

    def id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise KeyError(f"unknown token {name!r}") from None

    def name(self, sym: int) -> str:
        return self.names[sym]

    def encode(self, tokens: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.id(t) for t in tokens)

    def decode(self, symbols: Symbols) -> list[str]:
        return [self.names[x] for x in symbols]

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> tuple["SymbolTable", tuple[int, ...]]:
        """Build a table in order of first appearance and encode ``tokens``."""
        table = cls()
        return table, tuple(table.intern(t) for t in tokens)


def symbols(text: str) -> tuple[int, ...]:
    """Code points of ``text``; handy for writing examples like ``"abab"``."""
    return tuple(ord(ch) for ch in text)


def text_of(s: Symbols) -> str:
    return "".join(chr(x) for x in s)


@dataclass(frozen=True)
class Phrase:
    start: int
    end: int
    source: int | None = None  # None marks a literal (singleton) phrase

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def is_literal(self) -> bool:
        return self.source is None


@dataclass(frozen=True)
class Parsing:
    phrases: tuple[Phrase, ...] = ()

    def __post_init__(self):
        if not isinstance(self.phrases, tuple):
            object.__setattr__(self, "phrases", tuple(self.phrases))

    def __len__(self) -> int:
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def __getitem__(self, j):
        return self.phrases[j]

    @property
    def ends(self) -> list[int]:
        return [ph.end for ph in self.phrases]

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], sources: Iterable[int | None]) -> "Parsing":
        phrases = []
        pos = 1
        for length, src in zip(lengths, sources):
            phrases.append(Phrase(pos, pos + length - 1, None if length == 1 else src))
            pos += length
        return cls(tuple(phrases))

    @classmethod
    def singletons(cls, n: int) -> "Parsing":
        return cls(tuple(Phrase(p, p) for p in range(1, n + 1)))


class HopProfile(NamedTuple):
    hops: tuple[int, ...]
    hop_max: int


class Triple(NamedTuple):
    offset: int
    length: int
    literal: int


def structural_violations(n: int, phi: Parsing) -> list[str]:
    out = []
    expected = 1
    for j, ph in enumerate(phi.phrases, 1):
        if ph.start != expected:
            out.append(f"phrase {j}: starts at {ph.start}, expected {expected}")
        if ph.end < ph.start:
            out.append(f"phrase {j}: end {ph.end} before start {ph.start}")
        if ph.end > n:
            out.append(f"phrase {j}: end {ph.end} beyond string length {n}")
        expected = ph.end + 1
    if expected != n + 1 and not out:
        out.append(f"phrases cover [1, {expected - 1}] but the string has length {n}")
    return out


def validate_parsing(s: Symbols, phi: Parsing) -> list[str]:
    """Check ``phi`` against the LZ rules; returns violations (empty when ok).

    A copy phrase is valid when every symbol but the last equals the symbol
    at the periodic source position ``source + (t mod (start - source))``.
    This accepts overlapping sources exactly when the phrase is a power of
    the non-overlapping source unit.
    """
    n = len(s)
    out = structural_violations(n, phi)
    if out:
        return out
    for j, ph in enumerate(phi.phrases, 1):
        if ph.source is None:
            if ph.end != ph.start:
                out.append(f"phrase {j} [{ph.start},{ph.end}]: literal phrase longer than one symbol")
            continue
        src = ph.source
        if ph.end == ph.start:
            out.append(f"phrase {j} [{ph.start},{ph.end}]: single-symbol phrase must be a literal")
            continue
        if src < 1:
            out.append(f"phrase {j} [{ph.start},{ph.end}]: source {src} out of range")
            continue
        if src >= ph.start:
            out.append(f"phrase {j} [{ph.start},{ph.end}]: source not strictly earlier ({src} >= {ph.start})")
            continue
        period = ph.start - src
        for t in range(ph.end - ph.start):
            if s[ph.start - 1 + t] != s[src - 1 + t % period]:
                out.append(
                    f"phrase {j} [{ph.start},{ph.end}]: copied symbol at {ph.start + t} "
                    f"differs from source position {src + t % period}"
                )
                break
    return out


def require_valid(s: Symbols, phi: Parsing) -> None:
    violations = validate_parsing(s, phi)
    if violations:
        raise InvalidParsing(violations)


def compute_hops(s: Symbols, phi: Parsing, *, check: bool = True) -> HopProfile:
    if check:
        require_valid(s, phi)
    hops = [0] * len(s)
    for ph in phi.phrases:
        if ph.source is None:
            continue
        period = ph.start - ph.source
        base = ph.source - 1
        for t in range(ph.end - ph.start):
            # sources lie in [source, start-1], already final
            hops[ph.start - 1 + t] = hops[base + t % period] + 1
    return HopProfile(tuple(hops), max(hops, default=0))


def encode(s: Symbols, phi: Parsing) -> list[Triple]:
    require_valid(s, phi)
    out = []
    for ph in phi.phrases:
        if ph.source is None:
            out.append(Triple(0, 0, s[ph.start - 1]))
        else:
            out.append(Triple(ph.source, ph.end - ph.start, s[ph.end - 1]))
    return out


def _check_triple(k: int, tr: Triple, produced: int) -> None:
    offset, length, _ = tr
    if offset == 0 and length == 0:
        return
    if offset < 1 or length < 1:
        raise MalformedStream(f"triple {k}: bad offset/length pair ({offset}, {length})")
    if offset > produced:
        raise MalformedStream(
            f"triple {k}: offset {offset} does not precede the phrase start {produced + 1}"
        )


def decode(triples: Iterable[Triple]) -> list[int]:
    out: list[int] = []
    for k, tr in enumerate(triples, 1):
        tr = Triple(*tr)
        _check_triple(k, tr, len(out))
        if tr.length:
            base = tr.offset - 1
            for t in range(tr.length):
                # element-wise copy handles self-overlap
                out.append(out[base + t])
        out.append(tr.literal)
    return out


def parsing_of(triples: Sequence[Triple]) -> Parsing:
    """The parsing described by a triple stream (inverse of :func:`encode`)."""
    phrases = []
    pos = 1
    for k, tr in enumerate(triples, 1):
        tr = Triple(*tr)
        _check_triple(k, tr, pos - 1)
        phrases.append(Phrase(pos, pos + tr.length, tr.offset or None))
        pos += tr.length + 1
    return Parsing(tuple(phrases))


class AccessIndex:
    """Random access to single symbols of an encoded string.

    Stores only the triples plus the start position of every phrase, so a
    lookup touches one triple per hop.
    """

    def __init__(self, triples: Sequence[Triple]):
        self.triples = [Triple(*t) for t in triples]
        self.starts = []
        pos = 1
        for k, tr in enumerate(self.triples, 1):
            _check_triple(k, tr, pos - 1)
            self.starts.append(pos)
            pos += tr.length + 1
        self.length = pos - 1

    def __len__(self) -> int:
        return self.length

    def access(self, p: int) -> tuple[int, int]:
        """Return ``(symbol, triples_read)`` for position ``p``."""
        if not 1 <= p <= self.length:
            raise IndexError(f"position {p} outside [1, {self.length}]")
        reads = 0
        while True:
            j = bisect_right(self.starts, p) - 1
            offset, length, literal = self.triples[j]
            reads += 1
            start = self.starts[j]
            if p == start + length:
                return literal, reads
            p = offset + (p - start) % (start - offset)


def access_char(triples: Sequence[Triple] | AccessIndex, p: int) -> tuple[int, int]:
    index = triples if isinstance(triples, AccessIndex) else AccessIndex(triples)
    return index.access(p)
