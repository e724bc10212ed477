"""Plain-text formats for token strings, parsings, triples, graphs and instances.

Token stream::

    alphabet 3
    sym 0 a
    sym 1 b
    sym 2 c
    a b c a b

Parsing (1-based, inclusive, ``-`` marks a literal)::

    phrase 1 1 -
    phrase 2 4 1

Triples use the token header followed by ``triple <offset> <length> <token>``
lines.  Graphs are ``n m`` followed by ``u v`` edge lines.  An exported
reduction instance is a token stream plus a sidecar with ``graph``,
``edge``, ``params`` header lines and one ``kind index start end`` line per
segment.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable

from .core import Parsing, Phrase, SymbolTable, Triple
from .reduction import Graph, ReductionInstance, ReductionParams, Segment, build_reduction


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, path=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + msg)
        self.line = line


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file, never leaving a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _lines(text: str):
    for no, line in enumerate(text.splitlines(), 1):
        yield no, line.split()


# -- token streams ---------------------------------------------------------

def _table_header(table: SymbolTable) -> list[str]:
    out = [f"alphabet {len(table)}"]
    out += [f"sym {i} {name}" for i, name in enumerate(table.names)]
    return out


def _read_header(lines, path=None):
    """Consume ``alphabet`` and ``sym`` lines; return (table, remaining lines)."""
    lines = list(lines)
    k = 0
    while k < len(lines) and not lines[k][1]:
        k += 1
    if k == len(lines) or lines[k][1][0] != "alphabet":
        return None, lines[k:]
    no, parts = lines[k]
    if len(parts) != 2 or not parts[1].isdigit():
        raise FormatError("expected 'alphabet <size>'", no, path)
    sigma = int(parts[1])
    k += 1
    names: dict[int, str] = {}
    while k < len(lines) and lines[k][1][:1] == ["sym"]:
        no, parts = lines[k]
        if len(parts) != 3 or not parts[1].isdigit():
            raise FormatError("expected 'sym <id> <name>'", no, path)
        sid = int(parts[1])
        if sid in names:
            raise FormatError(f"symbol id {sid} declared twice", no, path)
        if parts[2] in names.values():
            raise FormatError(f"symbol name {parts[2]!r} declared twice", no, path)
        names[sid] = parts[2]
        k += 1
    if sorted(names) != list(range(sigma)):
        raise FormatError(f"symbol ids must be exactly 0..{sigma - 1}", lines[k - 1][0] if k else None, path)
    table = SymbolTable([names[i] for i in range(sigma)])
    return table, lines[k:]


def format_tokens(table: SymbolTable, text: Iterable[int]) -> str:
    return "\n".join(_table_header(table) + [" ".join(table.decode(list(text)))]) + "\n"


def parse_tokens(content: str, path=None) -> tuple[SymbolTable, tuple[int, ...]]:
    table, rest = _read_header(_lines(content), path)
    if table is None:
        # bare token list: symbols numbered by first appearance
        return SymbolTable.from_tokens(t for _, parts in rest for t in parts)
    out = []
    for no, parts in rest:
        for tok in parts:
            if tok not in table:
                raise FormatError(f"unknown token {tok!r}", no, path)
            out.append(table.id(tok))
    return table, tuple(out)


def read_tokens(path) -> tuple[SymbolTable, tuple[int, ...]]:
    return parse_tokens(Path(path).read_text(encoding="utf-8"), path)


def write_tokens(path, table: SymbolTable, text) -> None:
    atomic_write(path, format_tokens(table, text))


# -- parsings --------------------------------------------------------------

def format_parsing(phi: Parsing) -> str:
    return "".join(
        f"phrase {ph.start} {ph.end} {'-' if ph.source is None else ph.source}\n" for ph in phi
    )


def parse_parsing(content: str, path=None) -> Parsing:
    phrases = []
    expected = 1
    for no, parts in _lines(content):
        if not parts:
            continue
        if len(parts) != 4 or parts[0] != "phrase":
            raise FormatError("expected 'phrase <start> <end> <source>'", no, path)
        try:
            start, end = int(parts[1]), int(parts[2])
            src = None if parts[3] == "-" else int(parts[3])
        except ValueError:
            raise FormatError("phrase fields must be integers or '-'", no, path) from None
        if start != expected or end < start:
            raise FormatError(f"phrase [{start},{end}] does not continue the tiling at {expected}", no, path)
        phrases.append(Phrase(start, end, src))
        expected = end + 1
    return Parsing(tuple(phrases))


def read_parsing(path) -> Parsing:
    return parse_parsing(Path(path).read_text(encoding="utf-8"), path)


def write_parsing(path, phi: Parsing) -> None:
    atomic_write(path, format_parsing(phi))


# -- triples ---------------------------------------------------------------

def format_triples(table: SymbolTable, triples: Iterable[Triple]) -> str:
    lines = _table_header(table)
    lines += [f"triple {o} {n} {table.name(lit)}" for o, n, lit in triples]
    return "\n".join(lines) + "\n"


def parse_triples(content: str, path=None) -> tuple[SymbolTable, list[Triple]]:
    table, rest = _read_header(_lines(content), path)
    if table is None:
        raise FormatError("triple file needs an 'alphabet' header", None, path)
    out = []
    for no, parts in rest:
        if not parts:
            continue
        if len(parts) != 4 or parts[0] != "triple":
            raise FormatError("expected 'triple <offset> <length> <token>'", no, path)
        if not (parts[1].isdigit() and parts[2].isdigit()):
            raise FormatError("offset and length must be non-negative integers", no, path)
        if parts[3] not in table:
            raise FormatError(f"unknown token {parts[3]!r}", no, path)
        out.append(Triple(int(parts[1]), int(parts[2]), table.id(parts[3])))
    return table, out


def read_triples(path):
    return parse_triples(Path(path).read_text(encoding="utf-8"), path)


# -- graphs ----------------------------------------------------------------

def format_graph(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def parse_graph(content: str, path=None) -> Graph:
    rows = [(no, parts) for no, parts in _lines(content) if parts]
    if not rows:
        raise FormatError("empty graph file", None, path)
    no, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise FormatError("expected 'n m'", no, path) from None
    if len(rows) - 1 != m:
        raise FormatError(f"header announces {m} edges, found {len(rows) - 1}", no, path)
    edges = []
    for no, parts in rows[1:]:
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise FormatError("expected 'u v'", no, path) from None
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges))
    except ValueError as exc:
        msg = str(exc)
    # rescan only on failure to name the offending line
    bad = None
    for k in range(1, len(edges) + 1):
        try:
            Graph(n, tuple(edges[:k]))
        except ValueError:
            bad = rows[k][0]
            break
    raise FormatError(msg, bad, path)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), path)


def write_graph(path, g: Graph) -> None:
    atomic_write(path, format_graph(g))


# -- reduction instances ---------------------------------------------------

def format_segments(inst: ReductionInstance) -> str:
    g, p = inst.graph, inst.params
    lines = [f"graph {g.n} {g.m}"]
    lines += [f"edge {u} {v}" for u, v in g.edges]
    lines.append(f"params {p.c} {p.ell}")
    lines += [f"{s.kind} {s.index} {s.start} {s.end}" for s in inst.segments]
    return "\n".join(lines) + "\n"


def instance_paths(prefix) -> tuple[Path, Path]:
    prefix = str(prefix)
    return Path(prefix + ".tokens"), Path(prefix + ".seg")


def write_instance(prefix, inst: ReductionInstance) -> None:
    tok_path, seg_path = instance_paths(prefix)
    tokens = format_tokens(inst.table, inst.text)
    segs = format_segments(inst)
    atomic_write(tok_path, tokens)
    atomic_write(seg_path, segs)


def read_instance(prefix) -> ReductionInstance:
    """Re-import an exported instance, checking it against a fresh rebuild."""
    tok_path, seg_path = instance_paths(prefix)
    table, text = read_tokens(tok_path)
    n = m = None
    edges = []
    params = None
    segments = []
    for no, parts in _lines(seg_path.read_text(encoding="utf-8")):
        if not parts:
            continue
        try:
            if parts[0] == "graph":
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "edge":
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "params":
                params = ReductionParams(int(parts[1]), int(parts[2]))
            elif len(parts) == 4:
                segments.append(Segment(parts[0], int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise FormatError("unrecognised line", no, seg_path)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed line ({exc})", no, seg_path) from None
    if n is None or params is None:
        raise FormatError("missing 'graph' or 'params' line", None, seg_path)
    if len(edges) != m:
        raise FormatError(f"graph announces {m} edges, found {len(edges)}", None, seg_path)
    inst = build_reduction(Graph(n, tuple(edges)), params)
    if inst.table.names != table.names or inst.text != text:
        raise FormatError("token stream does not match the instance described by the sidecar", None, tok_path)
    if inst.segments != segments:
        raise FormatError("segment index does not match the rebuilt instance", None, seg_path)
    return inst
