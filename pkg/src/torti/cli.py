"""Command line front end: ``torti <verb> ...``.

Exit codes: 0 success, 1 invalid input or usage, 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .bridge import alexander_bridge, alexander_bridge_oracle, verify_structure, y_slices
from .cfrac import (
    build_graph,
    canonical_decomposition,
    dual,
    expand_even,
    modify,
    parse_fraction,
)
from .checks import run_selftest
from .errors import ConsistencyError, TortiError
from .knot import (
    TortiKnot,
    classify_genus_one,
    invariant_report,
    satellite_invariants,
)
from .polynomial import UniLaurent, equal_up_to_units

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-671/1732" through as a positional, not an option
        self._negative_number_matcher = re.compile(r"^-\d")

    def error(self, message):
        raise _ArgError(message)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _fmt_list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _table(rows: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# ---------------------------------------------------------------------------
# verbs


def cmd_cfrac(args) -> tuple[int, str]:
    frac = parse_fraction(args.fraction)
    cf = expand_even(frac)
    if args.modified:
        return EXIT_OK, _fmt_list(modify(cf).doubled())
    if args.dual:
        return EXIT_OK, _fmt_list(dual(cf).doubled())
    if args.graph:
        g = build_graph(cf)
        lines = ["vertex  height  weight"]
        for i, (y, w) in enumerate(zip(g.heights, g.weights)):
            lines.append(f"{i:>6}  {y:>6}  {w:>6}")
        lines.append(f"h = {g.h}, q = {g.q}, ell = {g.heights[-1]}")
        return EXIT_OK, "\n".join(lines)
    if args.canon:
        cd = canonical_decomposition(cf)
        rows = [("decomposition", str(cd)), ("lambda", str(cd.lam)), ("rho", str(cd.rho))]
        for kind, lam, rho in cd.per_block:
            rows.append((f"  {kind} block", f"lambda {lam}, rho {rho}"))
        return EXIT_OK, _table(rows)
    return EXIT_OK, _fmt_list(cf.doubled())


def cmd_bridge(args) -> tuple[int, str]:
    frac = parse_fraction(args.fraction)
    cf = expand_even(frac)
    p = alexander_bridge(cf)
    out = []
    code = EXIT_OK
    if args.oracle:
        q = alexander_bridge_oracle(frac.den, frac.num)
        same = equal_up_to_units(p, q)
        out.append(f"oracle: {q}")
        out.append(f"matches recursion: {_yes(same)}")
        if not same:
            code = EXIT_INTERNAL
        p = q
    lo, _ = p.y_range()
    out.insert(0, f"Delta_B = {p}")
    for j, s in enumerate(y_slices(p), start=lo):
        out.append(f"  y^{j}: {s if s else '0'}")
    if args.verify:
        rep = verify_structure(p, canonical_decomposition(cf), frac.den // 2)
        out.append(f"lambda = {rep.lam}, rho = {rep.rho}, gamma = {rep.gamma}")
        for name, good in rep.checks.items():
            out.append(f"  {'ok  ' if good else 'FAIL'} {name}")
        if not rep.ok:
            code = EXIT_INTERNAL
    return code, "\n".join(out)


def _knot_from(args) -> TortiKnot:
    return TortiKnot(args.two_alpha, args.beta, args.r)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def report_text(rep) -> str:
    cls = rep.genus_one_class
    params = " ".join(f"{k}={v}" for k, v in cls.params.items() if k != "delta")
    rows = [
        ("knot", str(rep.knot)),
        ("normalized", f"{rep.normalized_knot}  (mirrored: {_yes(rep.mirrored)})"),
        ("cfrac", _fmt_list(rep.cfrac.doubled())),
        ("ell", str(rep.ell)),
        ("lambda", str(rep.lam)),
        ("rho", str(rep.rho)),
        ("Delta_K", str(rep.delta_K)),
        ("degree", str(rep.degree)),
        ("genus", str(rep.genus)),
        ("monic", _yes(rep.monic)),
        ("fibred", f"{_yes(rep.fibred)}  ({rep.fibred_certificate})"),
        ("unknot", _yes(rep.unknot)),
        ("genus one", f"{cls.case} {params}".rstrip()),
    ]
    if not rep.gamma_sign_pinned:
        rows.append(("note", "Gamma has zero predicted extreme coefficient; its sign comes from the recursion"))
    return _table(rows)


def cmd_knot(args) -> tuple[int, str]:
    rep = invariant_report(_knot_from(args))
    if args.json:
        return EXIT_OK, _dump(rep.to_json())
    return EXIT_OK, report_text(rep)


def cmd_classify(args) -> tuple[int, str]:
    cls = classify_genus_one(_knot_from(args))
    if cls.is_none:
        return EXIT_OK, "none"
    parts = [cls.case]
    for k, v in cls.params.items():
        if k == "companion":
            parts.append(f"companion=T({v[0]},{v[1]})")
        elif k == "pattern":
            parts.append(f"pattern=B({v[0]},{v[1]})")
        elif k == "delta":
            parts.append(f"Delta={UniLaurent.from_json(v)}")
        else:
            parts.append(f"{k}={v}")
    return EXIT_OK, " ".join(parts)


def cmd_satellite(args) -> tuple[int, str]:
    g, fibred = satellite_invariants(_knot_from(args), args.companion_genus, args.companion_fibred)
    return EXIT_OK, _table([("genus", str(g)), ("fibred", _yes(fibred))])


def _batch_record(item: tuple[int, str]) -> dict:
    lineno, text = item
    try:
        fields = text.split()
        if len(fields) != 3:
            raise ValueError(f"expected '2A B R', got {len(fields)} fields")
        try:
            ta, b, r = (int(f) for f in fields)
        except ValueError:
            raise ValueError(f"malformed number in {text!r}") from None
        return invariant_report(TortiKnot(ta, b, r)).to_json()
    except ConsistencyError as exc:
        return {"line": lineno, "input": text, "error": f"internal: {exc}"}
    except (TortiError, ValueError) as exc:
        return {"line": lineno, "input": text, "error": str(exc)}


def _batch_text(rec: dict) -> str:
    if "error" in rec:
        return f"line {rec['line']}: error: {rec['error']}"
    i = rec["input"]
    return (f"K({i['two_alpha']},{i['beta']}|{i['r']})  genus {rec['genus']}  "
            f"fibred {_yes(rec['fibred'])}  monic {_yes(rec['monic'])}  "
            f"Delta_K {UniLaurent.from_json(rec['delta_K'])}")


def cmd_batch(args) -> tuple[int, str]:
    try:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        return EXIT_INPUT, f"error: cannot read {args.file}: {exc.strerror}"
    items = []
    for n, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            items.append((n, text))
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            # map keeps input order whatever order the workers finish in
            records = list(pool.map(_batch_record, items, chunksize=16))
    else:
        records = [_batch_record(it) for it in items]
    if args.json:
        out = "\n".join(json.dumps(rec) for rec in records)
    else:
        out = "\n".join(_batch_text(rec) for rec in records)
    code = EXIT_INTERNAL if any(str(r.get("error", "")).startswith("internal:") for r in records) else EXIT_OK
    return code, out


def cmd_selftest(args) -> tuple[int, str]:
    if args.alpha_max < 2:
        return EXIT_INPUT, "error: --alpha-max must be at least 2"
    if args.samples < 0:
        return EXIT_INPUT, "error: --samples must be non-negative"
    results = run_selftest(args.alpha_max, args.samples, args.seed)
    out = []
    for res in results:
        out.append(res.line())
        out.extend(f"    {msg}" for msg in res.failures)
        out.extend(f"    note: {msg}" for msg in res.notes)
    ok = all(r.ok for r in results)
    out.append("selftest " + ("passed" if ok else "FAILED"))
    return (EXIT_OK if ok else EXIT_INTERNAL), "\n".join(out)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torti", description="Invariants of torti-rational knots K(2A, B | R).")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("cfrac", help="even continued fraction of B/2A")
    c.add_argument("fraction", help="B/2A, e.g. 21/34")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--modified", action="store_true", help="modified form (odd entries +-2)")
    g.add_argument("--dual", action="store_true", help="dual fraction")
    g.add_argument("--graph", action="store_true", help="vertex heights and weights")
    g.add_argument("--canon", action="store_true", help="canonical block decomposition")
    c.set_defaults(func=cmd_cfrac)

    b = sub.add_parser("bridge", help="Alexander polynomial of the 2-bridge link B(2A, B)")
    b.add_argument("fraction", help="B/2A")
    b.add_argument("--oracle", action="store_true", help="use the Fox-calculus engine and compare")
    b.add_argument("--verify", action="store_true", help="check the coefficient structure")
    b.set_defaults(func=cmd_bridge)

    def knot_args(sp):
        sp.add_argument("two_alpha", type=int, metavar="2A")
        sp.add_argument("beta", type=int, metavar="B")
        sp.add_argument("r", type=int, metavar="R")

    k = sub.add_parser("knot", help="full invariant report for K(2A, B | R)")
    knot_args(k)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_knot)

    cl = sub.add_parser("classify", help="genus-one family of K(2A, B | R)")
    knot_args(cl)
    cl.set_defaults(func=cmd_classify)

    s = sub.add_parser("satellite", help="satellite with pattern K(2A, B | R)")
    knot_args(s)
    s.add_argument("--companion-genus", type=int, required=True, metavar="G")
    s.add_argument("--companion-fibred", action="store_true")
    s.set_defaults(func=cmd_satellite)

    bt = sub.add_parser("batch", help="one report per '2A B R' line of FILE")
    bt.add_argument("file", metavar="FILE")
    bt.add_argument("--json", action="store_true", help="JSON lines output")
    bt.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    bt.set_defaults(func=cmd_batch)

    st = sub.add_parser("selftest", help="run the property sweeps")
    st.add_argument("--alpha-max", type=int, default=400, metavar="N", help="bound on 2A")
    st.add_argument("--samples", type=int, default=0, metavar="K", help="extra random pairs")
    st.add_argument("--seed", type=int, default=0, metavar="S")
    st.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str]) -> tuple[int, str]:
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            args = parser.parse_args(list(argv))
    except _ArgError as exc:
        return EXIT_INPUT, f"torti: error: {exc}"
    except SystemExit as exc:  # --help
        return (EXIT_OK if not exc.code else EXIT_INPUT), buf.getvalue().rstrip("\n")
    try:
        return args.func(args)
    except ConsistencyError as exc:
        return EXIT_INTERNAL, f"internal consistency failure: {exc}"
    except (TortiError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}"


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    if out:
        failed = code == EXIT_INPUT or out.startswith("internal consistency failure")
        stream = sys.stderr if failed else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
