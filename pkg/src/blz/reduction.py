"""Vertex cover -> bounded-access parsing: instance builder, witness, extraction.

Token naming in generated instances (ids follow first appearance)::

    v3      vertex character            v3'    its primed twin
    #p5     separator in the prefix P   #v3    separator closing X_3
    e2      edge character              $2     edge marker in Y_2
    #e2     separator closing Y_2       #1_4   separator after the 4th
                                               copy of alpha(1) in beta(1)
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import combinations

from .core import Parsing, Phrase, SymbolTable, compute_hops, require_valid

VC_LIMIT = 20


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 1..{self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)


def is_cover(g: Graph, cover) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges)


def greedy_cover(g: Graph) -> frozenset[int]:
    """Max-degree greedy cover (smallest index on ties)."""
    left = set(g.edges)
    cover = set()
    while left:
        deg: dict[int, int] = {}
        for u, v in left:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        best = min(deg, key=lambda x: (-deg[x], x))
        cover.add(best)
        left = {e for e in left if best not in e}
    return frozenset(cover)


def vertex_cover_exact(g: Graph, limit: int = VC_LIMIT) -> tuple[int, frozenset[int]]:
    """Minimum vertex cover by a bounded search tree over uncovered edges."""
    if g.n > limit:
        raise ValueError(f"graph with {g.n} vertices exceeds the exact-cover limit {limit}")

    def cover_within(edges, k):
        if not edges:
            return set()
        if k == 0:
            return None
        u, v = edges[0]
        for w in (u, v):
            rest = cover_within([e for e in edges if w not in e], k - 1)
            if rest is not None:
                return rest | {w}
        return None

    edges = list(g.edges)
    for k in range(g.n + 1):
        found = cover_within(edges, k)
        if found is not None:
            return len(found), frozenset(found)
    raise AssertionError("the full vertex set is always a cover")


@dataclass(frozen=True)
class ReductionParams:
    c: int = 1
    ell: int = 1

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("hop bound c must be at least 1")
        if self.ell < 1:
            raise ValueError("replication count ell must be at least 1")


@dataclass(frozen=True)
class Segment:
    kind: str
    index: int
    start: int
    end: int

    def __len__(self):
        return self.end - self.start + 1


@dataclass
class ReductionInstance:
    text: tuple[int, ...]
    table: SymbolTable
    graph: Graph
    params: ReductionParams
    segments: list[Segment] = field(default_factory=list)

    def segment(self, kind: str, index: int) -> Segment:
        for seg in self.segments:
            if seg.kind == kind and seg.index == index:
                return seg
        raise KeyError(f"no segment {kind} {index}")

    def tokens(self) -> list[str]:
        return self.table.decode(self.text)

    def position_of(self, name: str) -> int:
        """1-based position of the first occurrence of token ``name``."""
        return self.text.index(self.table.id(name)) + 1

    @property
    def base_size(self) -> int:
        """Phrase count every optimal parsing pays besides the cover: 4n+6m+ell(c-1)."""
        g, p = self.graph, self.params
        return 4 * g.n + 6 * g.m + p.ell * (p.c - 1)


def _level_one(g: Graph) -> tuple[list[str], list[tuple[str, int, int, int]]]:
    toks: list[str] = []
    segs = []

    def seg(kind, index, items):
        start = len(toks) + 1
        toks.extend(items)
        segs.append((kind, index, start, len(toks)))

    p_items = []
    for i in range(1, g.n + 1):
        p_items += [f"v{i}", f"#p{i}"]
    for j in range(1, g.m + 1):
        p_items += [f"e{j}", f"#p{g.n + j}"]
    seg("P", 1, p_items)
    for i in range(1, g.n + 1):
        seg("X", i, [f"v{i}'", f"v{i}", f"#v{i}"])
    for j, (p, q) in enumerate(g.edges, 1):
        seg("Y", j, [f"v{p}'", f"v{p}", f"e{j}", f"${j}", f"v{q}'", f"v{q}", f"e{j}", f"${j}", f"#e{j}"])
    return toks, segs


def build_reduction(g: Graph, params: ReductionParams | None = None) -> ReductionInstance:
    """The string alpha(c) for graph ``g``.

    alpha(1) = P X Y, and alpha(i+1) = alpha(i) beta(i) where beta(i) is ell
    copies of alpha(i), each followed by a fresh separator.
    """
    if params is None:
        params = ReductionParams(c=1, ell=max(g.n, 1))
    toks, raw = _level_one(g)
    raw.append(("alpha", 1, 1, len(toks)))
    for level in range(1, params.c):
        alpha = list(toks)
        b_start = len(toks) + 1
        for gamma in range(1, params.ell + 1):
            raw.append((f"copy{level}", gamma, len(toks) + 1, len(toks) + len(alpha)))
            toks.extend(alpha)
            toks.append(f"#{level}_{gamma}")
        raw.append(("beta", level, b_start, len(toks)))
        raw.append(("alpha", level + 1, 1, len(toks)))
    table, text = SymbolTable.from_tokens(toks)
    segments = [Segment(*r) for r in raw]
    return ReductionInstance(text, table, g, params, segments)


def alpha_length(g: Graph, level: int, ell: int) -> int:
    """|alpha(level)| from the closed recurrence, independent of the builder."""
    size = 5 * g.n + 11 * g.m
    for _ in range(level - 1):
        size = (ell + 1) * size + ell
    return size


def target_size(g: Graph, k: int, params: ReductionParams) -> int:
    if not 0 <= k <= g.n:
        raise ValueError(f"cover size {k} outside 0..{g.n}")
    if params.ell <= k:
        raise ValueError(f"ell={params.ell} must exceed the cover size k={k}")
    return 4 * g.n + 6 * g.m + k + params.ell * (params.c - 1)


def witness_parsing(inst: ReductionInstance, cover) -> Parsing:
    """Parsing of ``inst.text`` whose size encodes ``cover``.

    Selected vertices get their X gadget split into three singletons; each
    Y gadget takes four phrases copying from a selected X gadget; each beta
    copy is a single phrase referring back to the prefix alpha.
    """
    g = inst.graph
    cover = frozenset(cover)
    if any(not 1 <= v <= g.n for v in cover):
        raise ValueError("cover mentions a vertex outside the graph")
    if not is_cover(g, cover):
        missing = [e for e in g.edges if e[0] not in cover and e[1] not in cover]
        raise ValueError(f"not a vertex cover: edge {missing[0]} is uncovered")

    phrases: list[Phrase] = []

    def add(start, end, src=None):
        phrases.append(Phrase(start, end, src))

    P = inst.segment("P", 1)
    for p in range(P.start, P.end + 1):
        add(p, p)
    x_start = {}
    for i in range(1, g.n + 1):
        X = inst.segment("X", i)
        x_start[i] = X.start
        add(X.start, X.start)
        if i in cover:
            add(X.start + 1, X.start + 1)
            add(X.start + 2, X.start + 2)
        else:
            add(X.start + 1, X.start + 2, inst.position_of(f"v{i}"))
    for j, (p, q) in enumerate(g.edges, 1):
        y = inst.segment("Y", j).start
        if p in cover and q in cover:
            add(y, y + 2, x_start[p])
            add(y + 3, y + 3)
            add(y + 4, y + 6, x_start[q])
            add(y + 7, y + 8, y + 3)
        elif p in cover:
            add(y, y + 2, x_start[p])
            add(y + 3, y + 3)
            add(y + 4, y + 5, x_start[q])
            add(y + 6, y + 8, y + 2)
        else:
            add(y, y + 1, x_start[p])
            add(y + 2, y + 3, inst.position_of(f"e{j}"))
            add(y + 4, y + 6, x_start[q])
            add(y + 7, y + 8, y + 3)
    for level in range(1, inst.params.c):
        for gamma in range(1, inst.params.ell + 1):
            copy = inst.segment(f"copy{level}", gamma)
            add(copy.start, copy.end + 1, 1)
    return Parsing(tuple(phrases))


def phrases_on(phi: Parsing, start: int, end: int) -> int:
    """Number of phrases of ``phi`` that intersect positions ``start..end``."""
    ends = phi.ends
    first = bisect_left(ends, start)
    last = bisect_left(ends, end)
    return last - first + 1


def extract_cover(inst: ReductionInstance, phi: Parsing) -> frozenset[int]:
    """Read a vertex cover back from any valid parsing of ``inst.text``.

    Vertices whose X gadget is cut into three phrases come first.  If they
    miss an edge, every Y gadget that either needs five or more phrases or
    contains a position with hop number at least 2 contributes the smaller
    endpoint of its edge.  Edges still uncovered after that get their
    smaller endpoint too, so the result is always a cover.
    """
    require_valid(inst.text, phi)
    g = inst.graph
    cover = set()
    for i in range(1, g.n + 1):
        X = inst.segment("X", i)
        if phrases_on(phi, X.start, X.end) == 3:
            cover.add(i)
    if is_cover(g, cover):
        return frozenset(cover)
    hops = compute_hops(inst.text, phi, check=False).hops
    for j, (p, q) in enumerate(g.edges, 1):
        Y = inst.segment("Y", j)
        k = phrases_on(phi, Y.start, Y.end)
        if k >= 5 or (k == 4 and max(hops[Y.start - 1 : Y.end]) >= 2):
            cover.add(p)
    for p, q in g.edges:
        if p not in cover and q not in cover:
            cover.add(p)
    return frozenset(cover)


def all_covers_bruteforce(g: Graph):
    """Every vertex cover of ``g`` (exponential; tests only)."""
    verts = range(1, g.n + 1)
    for k in range(g.n + 1):
        for sub in combinations(verts, k):
            if is_cover(g, sub):
                yield frozenset(sub)
