"""triflag command line: classify, repr, size, count, words, hasse, verify.

Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 enumeration guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import cases, so_even, so_triple, t0_words
from .exactlin import FullFlag, GuardExceeded, Subspace, as_field
from .oracle import edges_to_dot
from .textio import ParseError, format_flag, format_subspace, read_blocks

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
ORTHOGONAL = ("so-triple", "so-t0", "so-even")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- output

def _emit(rows: list[dict], fmt: str, out, headline: str | None = None):
    if fmt == "json":
        json.dump(rows, out, ensure_ascii=False, indent=1)
        out.write("\n")
    elif fmt == "csv" or headline is None:
        if not rows:
            return
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(f"{rows[0][headline]}\n")


# ---------------------------------------------------------------- helpers

def _check_field(args):
    try:
        field = as_field(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.case in ORTHOGONAL:
        try:
            field.require_odd()
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _calc(args):
    return cases.calculus(args.case, args.n, args.m_plus)


def _label(text: str, n: int | None) -> so_triple.TripleLabel:
    return so_triple.TripleLabel.parse(text, n)


def _is_label(text: str) -> bool:
    return "," in text


def _size_rows(args) -> list[dict]:
    r = args.r or args.p
    case = args.case
    if case in cases.GLB_CASES:
        calc = _calc(args)
        syms = [calc.parse(args.symbol)] if args.symbol else calc.symbols()
        return [{"symbol": s.render(ascii=args.ascii), "dim": calc.dimension(s), "size": calc.size(s, r)}
                for s in syms]
    if case == "so-triple" or (case == "so-even" and (not args.symbol or _is_label(args.symbol))):
        size = so_even.even_orbit_size if case == "so-even" else so_triple.orbit_size
        labs = [_label(args.symbol, args.n)] if args.symbol else (
            so_even.even_labels(args.n) if case == "so-even" else so_triple.labels(args.n))
        return [{"label": lab.serialize(), "size": size(lab, r)} for lab in labs]
    return _word_rows(args, [t0_words.WordSymbol.parse(args.symbol)] if args.symbol else None)


def _word_rows(args, words=None) -> list[dict]:
    r = args.r or args.p
    even = args.case == "so-even"
    if words is None:
        words = so_even.even_words(args.n) if even else t0_words.enumerate_words(args.n)
    size = so_even.even_t0_orbit_size if even else t0_words.t0_orbit_size
    return [{"word": w.render(ascii=args.ascii), "d": w.d, "ell_tau": w.ell_tau, "size": size(w, r)}
            for w in words]


def _read_inputs(path: str):
    try:
        return read_blocks(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _subspace(block) -> Subspace:
    p, rows = block
    return Subspace.span(rows, p, rows.shape[1])


def _flag(block) -> FullFlag:
    p, rows = block
    if Subspace.span(rows, p, rows.shape[1]).dim != rows.shape[0]:
        raise UsageError("flag rows are linearly dependent")
    return FullFlag.from_rows(rows, p)


# ---------------------------------------------------------------- commands

def cmd_count(args, out) -> int:
    if args.n is None:
        raise UsageError("count needs --n")
    rows = [{"case": args.case, "n": args.n, "quantity": q, "count": v}
            for q, v in cases.count_table(args.case, args.n, args.m_plus)]
    _emit(rows, args.format, out, headline="count")
    return EXIT_OK


def cmd_size(args, out) -> int:
    if args.n is None and not args.symbol:
        raise UsageError("size needs --n or --symbol")
    if args.n is None:
        args.n = _infer_n(args)
    rows = _size_rows(args)
    _emit(rows, args.format, out, headline="size" if args.symbol else None)
    return EXIT_OK


def _infer_n(args) -> int:
    sym = args.symbol
    if args.case in cases.GLB_CASES:
        text = sym.replace("−", "-")
        if args.case == "levi":
            return len(text)
        return (len(text) + 1) // 2
    if _is_label(sym):
        return sum(int(x) for x in sym.split(",")[:5])
    return t0_words.WordSymbol.parse(sym).n


def cmd_repr(args, out) -> int:
    if not args.symbol:
        raise UsageError("repr needs --symbol")
    p = args.p
    if args.case in cases.GLB_CASES:
        if args.n is None:
            args.n = _infer_n(args)
        calc = _calc(args)
        out.write(format_flag(calc.representative(calc.parse(args.symbol), p)))
        return EXIT_OK
    if _is_label(args.symbol):
        lab = _label(args.symbol, args.n)
        if args.case == "so-even" and lab.eps:
            raise UsageError("labels over M' have eps = 0")
        blocks = [so_triple.u_d(lab.n, 0, p), so_triple.u_d(lab.n, lab.d, p), so_triple.representative(lab, p)]
        out.write("\n".join(format_subspace(s) for s in blocks))
        return EXIT_OK
    word = t0_words.WordSymbol.parse(args.symbol)
    lab = word.label
    flag = t0_words.realizing_flag(word, p)
    out.write("\n".join([format_subspace(so_triple.u_d(lab.n, 0, p)),
                         format_subspace(so_triple.u_d(lab.n, lab.d, p)), format_flag(flag)]))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    if not args.file:
        raise UsageError("classify needs --file")
    blocks = _read_inputs(args.file)
    case = args.case
    if case in cases.GLB_CASES:
        flag = _flag(blocks[0])
        n = flag.ambient if case == "levi" else (flag.ambient + 1) // 2
        if case == "levi" and args.m_plus is None:
            raise UsageError("the Levi calculus needs --m-plus")
        calc = cases.calculus(case, n, args.m_plus)
        if flag.ambient != calc.ambient or flag.length != calc.ambient - 1:
            raise UsageError(f"expected a full flag of F^{calc.ambient}")
        sym = calc.symbol(flag)
        rows = [{"symbol": sym.render(ascii=args.ascii), "dim": calc.dimension(sym)}]
        _emit(rows, args.format, out, headline="symbol")
        return EXIT_OK
    as_field(blocks[0][0]).require_odd()
    if len(blocks) != 3:
        raise UsageError("orthogonal cases need three blocks")
    if case == "so-t0":
        flag = _flag(blocks[2])
        word = t0_words.classify_t0(_subspace(blocks[0]), _subspace(blocks[1]), flag)
        rows = [{"word": word.render(ascii=args.ascii), "label": word.label.serialize(), "d": word.d}]
        _emit(rows, args.format, out, headline="word")
        return EXIT_OK
    spaces = [_subspace(b) for b in blocks]
    if case == "so-even":
        lab = so_even.even_triple_invariants(*spaces)
        comp = ",".join(str(so_even.component(s)) for s in spaces)
        rows = [{"label": lab.serialize(), "component": comp}]
    else:
        lab = so_triple.triple_invariants(*spaces)
        rows = [{"label": lab.serialize()}]
    _emit(rows, args.format, out, headline="label")
    return EXIT_OK


def cmd_words(args, out) -> int:
    if args.case not in ("so-t0", "so-even"):
        raise UsageError("words is defined for so-t0 and so-even")
    if args.n is None:
        raise UsageError("words needs --n")
    fmt = "csv" if args.format == "text" else args.format
    _emit(_word_rows(args), fmt, out)
    return EXIT_OK


def cmd_hasse(args, out) -> int:
    if args.n is None:
        raise UsageError("hasse needs --n")
    edges = cases.hasse(args.case, args.n, args.p, args.m_plus, ascii=args.ascii)
    if args.format == "dot":
        out.write(edges_to_dot(edges))
    elif args.format == "json":
        _emit([{"source": e.source, "index": e.index, "target": e.target} for e in edges], "json", out)
    else:
        out.write("".join(f"{e}\n" for e in edges))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.n is None:
        raise UsageError("verify needs --n")
    verdicts = cases.verify(args.case, args.n, args.p, args.m_plus, seed=args.seed)
    rows = [{"check": v.case, "n": v.n, "p": v.p, "universe": v.universe, "classes": v.classes,
             "ok": v.ok, "summary": v.summary()} for v in verdicts]
    if args.format in ("csv", "json"):
        _emit(rows, args.format, out)
    else:
        for v in verdicts:
            out.write(f"{v.case} n={v.n} p={v.p}: {v.summary()}\n")
            for note in v.notes:
                out.write(f"  {note}\n")
    return EXIT_OK if all(v.ok for v in verdicts) else EXIT_MISMATCH


COMMANDS = {"count": cmd_count, "size": cmd_size, "repr": cmd_repr, "classify": cmd_classify,
            "words": cmd_words, "hasse": cmd_hasse, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triflag", description="Orbits on triple flag varieties over F_p.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--case", required=True, choices=cases.CASES)
    common.add_argument("--n", type=int, help="rank (matrix size for levi)")
    common.add_argument("--p", type=int, default=3, help="prime field size (default 3)")
    common.add_argument("--r", type=int, help="evaluate sizes at r (default p)")
    common.add_argument("--m-plus", type=int, help="size of the first block for levi")
    common.add_argument("--symbol", help="symbol, label a,b,c+,c-,c0,eps, or word")
    common.add_argument("--file", help="input in the 'p n' matrix text format")
    common.add_argument("--format", choices=("text", "csv", "json", "dot"), default="text")
    common.add_argument("--ascii", action="store_true", help="write al/be and '-' instead of Greek and U+2212")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or name).strip())
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "dot" and args.command != "hasse":
        parser.error("--format dot is only for hasse")
    try:
        _check_field(args)
        return COMMANDS[args.command](args, sys.stdout)
    except GuardExceeded as exc:
        print(f"triflag: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ParseError, ValueError) as exc:
        print(f"triflag: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
