"""``blz`` command line: every subcommand prints ``key=value`` result lines.

Exit status: 0 success / check passed, 1 check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io, kernels
from .core import AccessIndex, InvalidParsing, MalformedStream, SymbolTable, compute_hops, decode, encode, validate_parsing
from .parsers import SolverBudget, exact_blz, greedy_bounded_blz, greedy_lz76
from .reduction import (
    ReductionParams,
    build_reduction,
    extract_cover,
    is_cover,
    target_size,
    vertex_cover_exact,
    witness_parsing,
)
from .squarefree import audit_lower_bound, is_square_free, thue_word

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def emit(**pairs) -> None:
    for key, value in pairs.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, (list, tuple, set, frozenset)):
            value = ",".join(str(x) for x in value)
        print(f"{key}={value}")


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("BLZ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"BLZ_THREADS must be an integer, got {env!r}") from None
    return 1


def _emit_parsing(args, phi) -> None:
    if getattr(args, "output", None):
        io.write_parsing(args.output, phi)
    else:
        sys.stdout.write(io.format_parsing(phi))


def cmd_parse(args) -> int:
    _, s = io.read_tokens(args.string)
    threads = _threads(args)
    if args.mode == "greedy":
        phi = greedy_lz76(s)
        extra = {}
    elif args.mode == "bounded":
        phi = greedy_bounded_blz(s, _need_c(args))
        extra = {}
    else:
        budget = SolverBudget(args.max_nodes, args.time_limit, args.upper_bound)
        res = exact_blz(s, _need_c(args), budget)
        phi = res.parsing
        extra = {"proven_optimal": res.proven_optimal, "nodes": res.nodes, "threads": threads}
    prof = compute_hops(s, phi)
    emit(mode=args.mode, n=len(s), size=len(phi), hop_max=prof.hop_max, **extra)
    _emit_parsing(args, phi)
    return OK


def _need_c(args) -> int:
    if args.c is None:
        raise UsageError("--c is required for this mode")
    if args.c < 0:
        raise UsageError("--c must be non-negative")
    return args.c


def cmd_hops(args) -> int:
    _, s = io.read_tokens(args.string)
    phi = io.read_parsing(args.parsing)
    prof = compute_hops(s, phi)
    emit(hops=prof.hops, hop_max=prof.hop_max)
    return OK


def cmd_access(args) -> int:
    table, triples = io.read_triples(args.triples)
    index = AccessIndex(triples)
    if not 1 <= args.pos <= len(index):
        raise UsageError(f"--pos must lie in [1, {len(index)}]")
    sym, reads = index.access(args.pos)
    emit(pos=args.pos, symbol=table.name(sym), accesses=reads)
    return OK


def cmd_encode(args) -> int:
    table, s = io.read_tokens(args.string)
    phi = io.read_parsing(args.parsing)
    triples = encode(s, phi)
    text = io.format_triples(table, triples)
    if args.output:
        io.atomic_write(args.output, text)
        emit(triples=len(triples), n=len(s))
    else:
        sys.stdout.write(text)
    return OK


def cmd_decode(args) -> int:
    table, triples = io.read_triples(args.triples)
    s = decode(triples)
    text = io.format_tokens(table, s)
    if args.output:
        io.atomic_write(args.output, text)
        emit(n=len(s), triples=len(triples))
    else:
        sys.stdout.write(text)
    return OK


def _params(args, g) -> ReductionParams:
    ell = args.ell if args.ell is not None else max(g.n, 1)
    return ReductionParams(args.c, ell)


def cmd_reduce(args) -> int:
    g = io.read_graph(args.graph)
    params = _params(args, g)
    inst = build_reduction(g, params)
    if args.out:
        io.write_instance(args.out, inst)
    emit(n=g.n, m=g.m, c=params.c, ell=params.ell, length=len(inst.text), alphabet=len(inst.table))
    if args.k is not None:
        emit(target_size=target_size(g, args.k, params))
    return OK


def _parse_cover(text: str) -> set[int]:
    if not text.strip():
        return set()
    try:
        return {int(x) for x in text.split(",") if x.strip()}
    except ValueError:
        raise UsageError(f"--cover must be a comma-separated vertex list, got {text!r}") from None


def cmd_witness(args) -> int:
    inst = io.read_instance(args.instance)
    cover = _parse_cover(args.cover)
    phi = witness_parsing(inst, cover)
    prof = compute_hops(inst.text, phi)
    emit(size=len(phi), hop_max=prof.hop_max, cover_size=len(cover))
    if inst.params.ell > len(cover):
        emit(target_size=target_size(inst.graph, len(cover), inst.params))
    _emit_parsing(args, phi)
    return OK


def cmd_extract_cover(args) -> int:
    inst = io.read_instance(args.instance)
    phi = io.read_parsing(args.parsing)
    cover = extract_cover(inst, phi)
    bound = len(phi) - inst.base_size
    emit(cover=sorted(cover), cover_size=len(cover), is_cover=is_cover(inst.graph, cover),
         parsing_size=len(phi), size_bound=bound)
    return OK


def cmd_vc(args) -> int:
    g = io.read_graph(args.graph)
    tau, cover = vertex_cover_exact(g)
    emit(tau=tau, cover=sorted(cover))
    return OK


def cmd_thue(args) -> int:
    if args.length < 0:
        raise UsageError("--length must be non-negative")
    w = thue_word(args.length)
    table = SymbolTable(["0", "1", "2"])
    text = io.format_tokens(table, w)
    if args.output:
        io.atomic_write(args.output, text)
        emit(length=len(w))
    else:
        sys.stdout.write(text)
    return OK


def cmd_check_squarefree(args) -> int:
    _, s = io.read_tokens(args.string)
    ok = is_square_free(s)
    emit(n=len(s), square_free=ok)
    return OK if ok else FAILED


def cmd_audit_bound(args) -> int:
    _, s = io.read_tokens(args.string)
    c = _need_c(args)
    phi = io.read_parsing(args.parsing) if args.parsing else greedy_bounded_blz(s, c)
    if not is_square_free(s):
        raise UsageError("input string is not square-free")
    rep = audit_lower_bound(s, c, phi)
    emit(n=rep.n, c=rep.c, parsing_size=rep.parsing_size, lower_bound=rep.lower_bound,
         lz76_size=rep.lz76_size, ratio=f"{rep.ratio:.4f}", hop_max=rep.hop_max, passed=rep.passed)
    return OK if rep.passed else FAILED


def cmd_verify(args) -> int:
    _, s = io.read_tokens(args.string)
    phi = io.read_parsing(args.parsing)
    violations = validate_parsing(s, phi)
    ok = not violations
    pairs = {"valid": ok, "size": len(phi)}
    if ok:
        hop_max = compute_hops(s, phi, check=False).hop_max
        pairs["hop_max"] = hop_max
        if args.c is not None:
            pairs["hop_ok"] = hop_max <= args.c
            ok = ok and hop_max <= args.c
        if args.target is not None:
            pairs["target"] = args.target
            pairs["size_ok"] = len(phi) <= args.target
            ok = ok and len(phi) <= args.target
    else:
        pairs["violations"] = len(violations)
    pairs["ok"] = ok
    emit(**pairs)
    for v in violations[:20]:
        print(f"# {v}", file=sys.stderr)
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blz", description="Bounded-access Lempel-Ziv parsing toolkit")
    ap.add_argument("--kernels", action="store_true", help="print which kernel implementation is loaded")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("parse", help="parse a token string")
    p.add_argument("string")
    p.add_argument("--mode", choices=["greedy", "bounded", "exact"], default="greedy")
    p.add_argument("--c", type=int)
    p.add_argument("--max-nodes", type=int, default=SolverBudget.max_nodes)
    p.add_argument("--time-limit", type=float, default=SolverBudget.time_limit)
    p.add_argument("--upper-bound", type=int)
    p.add_argument("--threads", type=int, help="worker count (fallback: BLZ_THREADS)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("hops", help="per-position hop numbers of a parsing")
    p.add_argument("string")
    p.add_argument("parsing")
    p.set_defaults(func=cmd_hops)

    p = sub.add_parser("access", help="extract one symbol from a triple file")
    p.add_argument("triples")
    p.add_argument("--pos", type=int, required=True)
    p.set_defaults(func=cmd_access)

    p = sub.add_parser("encode", help="string + parsing -> triples")
    p.add_argument("string")
    p.add_argument("parsing")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="triples -> string")
    p.add_argument("triples")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("reduce", help="graph -> reduction instance")
    p.add_argument("graph")
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="instance prefix; writes PREFIX.tokens and PREFIX.seg")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("witness", help="parsing of an instance built from a vertex cover")
    p.add_argument("instance", help="instance prefix")
    p.add_argument("--cover", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("extract-cover", help="vertex cover read back from a parsing")
    p.add_argument("instance")
    p.add_argument("parsing")
    p.set_defaults(func=cmd_extract_cover)

    p = sub.add_parser("vc", help="exact minimum vertex cover")
    p.add_argument("graph")
    p.set_defaults(func=cmd_vc)

    p = sub.add_parser("thue", help="square-free ternary word")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_thue)

    p = sub.add_parser("check-squarefree")
    p.add_argument("string")
    p.set_defaults(func=cmd_check_squarefree)

    p = sub.add_parser("audit-bound", help="check the square-free lower bound")
    p.add_argument("string")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--parsing", help="parsing file (default: bounded greedy)")
    p.set_defaults(func=cmd_audit_bound)

    p = sub.add_parser("verify", help="validity, hop bound and size target of a parsing")
    p.add_argument("string")
    p.add_argument("parsing")
    p.add_argument("--c", type=int)
    p.add_argument("--target", type=int)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.kernels:
        emit(kernels=kernels.IMPLEMENTATION)
        if args.command is None:
            return OK
    if args.command is None:
        ap.print_usage(sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (UsageError, io.FormatError, InvalidParsing, MalformedStream, ValueError, KeyError, OSError) as exc:
        print(f"blz {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
