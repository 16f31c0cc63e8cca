"""Command-line entry point: ``loosepath <command> ...``.

Exit codes: 0 success, 1 discrepancy / proof gap / failed inequality,
2 invalid input or unconfigured capability, 3 search budget exhausted.
Tables on stdout are tab-separated; files written under ``--out`` carry no
timestamps, so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from . import audit as audit_mod
from . import constructions, ramsey, reference, turan
from .canon import canonical_form
from .constructions import RocketDefinition
from .embed import has_pattern
from .errors import IncompleteSearchError, InvalidParameterError, LoosePathError
from .graph import format_3g, read_3g, write_3g
from .patterns import get_pattern

EXIT_OK, EXIT_DISCREPANCY, EXIT_INVALID, EXIT_INCOMPLETE = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=list) + "\n"


class _Run:
    def __init__(self, args):
        self.args = args
        self.out = Path(args.out) if getattr(args, "out", None) else None

    def rocket(self) -> Optional[RocketDefinition]:
        path = getattr(self.args, "rocket", None)
        return RocketDefinition.from_paths(path) if path else None

    def budget(self) -> turan.Budget:
        env = turan.Budget.from_env()
        nodes = getattr(self.args, "budget_nodes", None)
        secs = getattr(self.args, "budget_secs", None)
        return turan.Budget(nodes if nodes is not None else env.nodes, secs if secs is not None else env.seconds)

    def artifact_dir(self) -> Optional[Path]:
        if self.out is None:
            return None
        self.out.mkdir(parents=True, exist_ok=True)
        return self.out

    def write(self, name: str, text: str) -> None:
        d = self.artifact_dir()
        if d is not None:
            (d / name).write_text(text)

    def diagnose(self, payload: dict) -> int:
        """Record a failing check so it can be replayed, and return exit code 1."""
        d = self.artifact_dir() or Path(".")
        record = {"command": sys.argv[1:] if self.args.argv is None else self.args.argv, **payload}
        path = d / f"diagnostics-{self.args.command}.json"
        path.write_text(_dump(record))
        print(f"# diagnostics written to {path}", file=sys.stderr)
        return EXIT_DISCREPANCY


# ---------------------------------------------------------------------------
# zoo


def cmd_zoo_build(run: _Run) -> int:
    a = run.args
    g = constructions.build(a.name, a.n, a.t, run.rocket())
    text = format_3g(g, comment=f"{a.name} n={g.n}")
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{a.name}\t{g.n}\t{len(g)}", file=sys.stderr if not a.out else sys.stdout)
    return EXIT_OK


def cmd_zoo_check(run: _Run) -> int:
    rep = constructions.check_formulas(run.args.max_n, run.rocket())
    table = rep.table()
    sys.stdout.write(table)
    run.write("zoo-check.tsv", table)
    if not rep.ok:
        return run.diagnose({"failures": [vars(e) for e in rep.failures]})
    return EXIT_OK


# ---------------------------------------------------------------------------
# turan


def _split(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(x for x in v.replace("+", ",").split(",") if x)
    return out


def _graph_hash(g) -> str:
    return hashlib.sha1(f"{g.n}:{canonical_form(g, max(13, g.n)):x}".encode()).hexdigest()[:12]


def _emit(dirname: str, n: int, order: int, graphs) -> None:
    d = Path(dirname)
    d.mkdir(parents=True, exist_ok=True)
    for g in graphs:
        write_3g(g, d / f"n{n}-order{order}-{_graph_hash(g)}.3g")


def _reference_values(forbid: list[str], n: int, contain: list[str], connected: bool, order: int):
    if contain or connected:
        return [None] * order
    names = sorted(get_pattern(f).name for f in forbid)
    if names == ["P"]:
        return [reference.p_value(s, n) if s <= 5 else None for s in range(1, order + 1)]
    if names == ["M"] and n >= 7:
        return [reference.m_value(s, n) if s <= 4 else None for s in range(1, order + 1)]
    if names == ["C"] and n >= 6:
        return [reference.c_value(n)] + [None] * (order - 1)
    return [None] * order


def cmd_turan(run: _Run) -> int:
    a = run.args
    forbid = _split(a.forbid)
    contain = _split(a.contain)
    anchors = tuple(get_pattern(c) for c in contain)
    for anchor in anchors:
        if any(has_pattern(anchor.graph, get_pattern(f)) for f in forbid):
            raise InvalidParameterError(f"anchor {anchor.name} is not free of the forbidden family")
    try:
        lad = turan.ladder(a.n, forbid, a.order, must_contain=anchors, connected_only=a.connected,
                           budget=run.budget(), workers=a.workers)
    except IncompleteSearchError as exc:
        print(f"{a.n}\t{a.order}\tincomplete\tbest>={exc.best}\t{exc}")
        run.write("turan.json", _dump({"status": "incomplete", "best": exc.best, "message": str(exc)}))
        return EXIT_INCOMPLETE
    refs = _reference_values(forbid, a.n, contain, a.connected, a.order)
    print("n\torder\tvalue\textremal\treference\tstatus")
    rows, bad = [], []
    for s in range(1, a.order + 1):
        res = lad.results[s - 1] if s <= len(lad.results) else None
        value = None if res is None else res.value
        ref = refs[s - 1]
        status = "-" if ref is None else ("match" if value == ref else "MISMATCH")
        if status == "MISMATCH":
            bad.append({"n": a.n, "order": s, "computed": value, "reference": ref})
        count = 0 if res is None else len(res.extremal)
        print(f"{a.n}\t{s}\t{'-' if value is None else value}\t{count}\t{'-' if ref is None else ref}\t{status}")
        rows.append({"order": s, "value": value, "reference": ref, "status": status,
                     "extremal": [g.edges() for g in (res.extremal if res else [])]})
        if a.emit_extremal and res is not None:
            _emit(a.emit_extremal, a.n, s, res.extremal)
    if not lad.strictly_decreasing():
        bad.append({"n": a.n, "violation": "ladder not strictly decreasing", "values": lad.values})
    run.write("turan.json", _dump({"n": a.n, "forbid": forbid, "contain": contain,
                                   "connected": a.connected, "orders": rows}))
    if bad:
        return run.diagnose({"mismatches": bad})
    return EXIT_OK


# ---------------------------------------------------------------------------
# ramsey


def cmd_ramsey_extract(run: _Run) -> int:
    a = run.args
    col = ramsey.read_col(a.coloring)
    cert = ramsey.find_mono_P(col)
    if cert is None:
        print("none")
    else:
        print(cert.to_json())
        run.write("certificate.json", cert.to_json() + "\n")
        if not ramsey.verify_certificate(col, cert):
            return run.diagnose({"coloring": a.coloring, "certificate": json.loads(cert.to_json()),
                                 "problem": "certificate failed verification"})
    if a.trace:
        tr = ramsey.reduction_trace(col, early_exit=not a.proof_mode, rocket_def=run.rocket())
        print("n\tr\ttotal\trequired\tcolours_with_P\tchosen\thost\tremoved_vertex\textra_edges")
        for st in tr.steps:
            req = "-" if st.required_total is None else st.required_total
            with_p = ",".join(map(str, st.colors_with_P)) or "-"
            print(f"{st.n}\t{st.r}\t{st.total_edges}\t{req}\t{with_p}\t"
                  f"{'-' if st.chosen_color is None else st.chosen_color}\t{st.host or '-'}\t"
                  f"{'-' if st.removed_vertex is None else st.removed_vertex}\t{len(st.removed_extra_edges)}")
        for gap in tr.logged_gaps:
            print(f"# logged gap: {gap}")
        run.write("trace.json", _dump(tr.to_dict()))
        if tr.gap is not None:
            print(f"# proof gap at n={tr.gap.n}: {tr.gap.assertion}: {tr.gap.detail}")
            return run.diagnose({"coloring": a.coloring, "proof_mode": a.proof_mode, "trace": tr.to_dict()})
    return EXIT_OK


def cmd_ramsey_trials(run: _Run) -> int:
    a = run.args
    s = ramsey.run_trials(a.n, a.colors, a.count, a.seed, early_exit=not a.proof_mode, rocket_def=run.rocket())
    print("n\tcolours\tcount\tseed\tcertificates\tverified\ttraces_ok\tproof_gaps")
    print(f"{s.n}\t{s.r}\t{s.count}\t{s.seed}\t{s.certificates}\t{s.verified}\t{s.trace_ok}\t{len(s.gaps)}")
    summary = {"n": s.n, "colours": s.r, "count": s.count, "seed": s.seed, "certificates": s.certificates,
               "verified": s.verified, "traces_ok": s.trace_ok, "gaps": s.gaps, "ok": s.ok}
    run.write("trials.json", _dump(summary))
    if not s.ok:
        return run.diagnose({**summary, "replay": "colouring i uses random.Random(seed * 1000003 + i)"})
    return EXIT_OK


def cmd_ramsey_search_lower(run: _Run) -> int:
    a = run.args
    try:
        w = ramsey.search_lower_bound(a.n, a.colors, run.budget())
    except IncompleteSearchError as exc:
        print(f"{a.n}\t{a.colors}\tincomplete\t{exc}")
        return EXIT_INCOMPLETE
    if w is None:
        print(f"{a.n}\t{a.colors}\texhausted")
        return EXIT_OK
    if ramsey.find_mono_P(w) is not None:
        return run.diagnose({"n": a.n, "colours": a.colors, "problem": "witness contains a monochromatic P",
                             "assignment": list(w.assignment)})
    print(f"{a.n}\t{a.colors}\twitness")
    if a.out:
        ramsey.write_col(w, a.out)
    else:
        sys.stdout.write(ramsey.format_col(w))
    return EXIT_OK


def cmd_ramsey_verify(run: _Run) -> int:
    a = run.args
    col = ramsey.read_col(a.coloring)
    cert = ramsey.MonoPCertificate.from_json(Path(a.certificate).read_text())
    ok = ramsey.verify_certificate(col, cert)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_DISCREPANCY


# ---------------------------------------------------------------------------
# audit


def cmd_audit_decompose(run: _Run) -> int:
    a = run.args
    g = read_3g(a.graph)
    reports = audit_mod.audit(g, all_q=a.all_q)
    for i, rep in enumerate(reports):
        if len(reports) > 1:
            print(f"# choice {i}")
        sys.stdout.write(rep.table())
    payload = [r.to_dict() for r in reports]
    run.write("audit.json", _dump(payload))
    if a.json:
        sys.stdout.write(_dump(payload))
    if not all(r.ok for r in reports):
        return run.diagnose({"graph": g.edges(), "n": g.n, "reports": payload})
    return EXIT_OK


def cmd_audit_sweep(run: _Run) -> int:
    a = run.args
    rep = audit_mod.random_sweep(a.n, a.trials, a.seed, all_q=a.all_q)
    sys.stdout.write(rep.table())
    run.write("sweep.json", _dump(rep.to_dict()))
    if not rep.ok:
        return run.diagnose(rep.to_dict())
    return EXIT_OK


def cmd_audit_structure(run: _Run) -> int:
    a = run.args
    try:
        rep, _ = audit_mod.k5plus_structure_sweep(a.n, run.budget())
    except IncompleteSearchError as exc:
        print(f"{a.n}\tincomplete\t{exc}")
        return EXIT_INCOMPLETE
    print("n\tgraphs\tembedded\tmax_edges\tdecomposable")
    print(f"{rep.n}\t{rep.graphs}\t{rep.embedded}\t{rep.max_edges}\t{rep.decomposable}")
    run.write("structure-sweep.json", _dump(rep.to_dict()))
    if not rep.ok:
        return run.diagnose(rep.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables


def cmd_tables(run: _Run) -> int:
    a = run.args
    rep = turan.check_reference_tables(a.max_n, a.computed_max_n, budget=run.budget())
    status = {(e.n, e.order): e for e in rep.entries}
    print("order\tn\treference\tfamily\tcomputed\tvalue_status\tfamily_status")
    for s in range(1, 6):
        for n in range(7, a.max_n + 1):
            e = status[(n, s)]
            fam = ", ".join(reference.p_family(s, n))
            comp = "-" if e.computed is None else e.computed
            print(f"{s}\t{n}\t{e.reference}\t{{{fam}}}\t{comp}\t{e.status}\t{e.family}")
    run.write("tables.tsv", rep.table())
    if not rep.ok:
        bad = [vars(e) for e in rep.entries if e.status == "mismatch" or e.family == "mismatch"]
        return run.diagnose({"max_n": a.max_n, "computed_max_n": a.computed_max_n, "mismatches": bad})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rocket", help="rocket definition: a .3g file or a directory of them")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget-nodes", type=int, default=None)
    budget.add_argument("--budget-secs", type=float, default=None)

    p = argparse.ArgumentParser(prog="loosepath", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    zoo = sub.add_parser("zoo", help="named constructions")
    zsub = zoo.add_subparsers(dest="action", required=True)
    b = zsub.add_parser("build", parents=[common])
    b.add_argument("--name", required=True)
    b.add_argument("--n", type=int)
    b.add_argument("--t", type=int)
    b.add_argument("--out", help="output .3g file (stdout if omitted)")
    b.set_defaults(func=cmd_zoo_build)
    c = zsub.add_parser("check", parents=[common])
    c.add_argument("--max-n", type=int, default=30)
    c.add_argument("--out", help="artifact directory")
    c.set_defaults(func=cmd_zoo_check)

    t = sub.add_parser("turan", parents=[common, budget], help="exact (conditional, higher-order) Turán numbers")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--forbid", action="append", required=True, help="pattern name; repeat or comma-separate")
    t.add_argument("--order", type=int, default=1)
    t.add_argument("--contain", action="append", help="anchor pattern that must embed")
    t.add_argument("--connected", action="store_true")
    t.add_argument("--emit-extremal", metavar="DIR")
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--out", help="artifact directory")
    t.set_defaults(func=cmd_turan)

    r = sub.add_parser("ramsey", help="colourings and monochromatic P")
    rsub = r.add_subparsers(dest="action", required=True)
    e = rsub.add_parser("extract", parents=[common])
    e.add_argument("--coloring", required=True)
    e.add_argument("--trace", action="store_true")
    e.add_argument("--proof-mode", action="store_true", help="run structural steps on P-free colours first")
    e.add_argument("--out", help="artifact directory")
    e.set_defaults(func=cmd_ramsey_extract)
    tr = rsub.add_parser("trials", parents=[common])
    tr.add_argument("--n", type=int, default=16)
    tr.add_argument("--colors", type=int, default=10)
    tr.add_argument("--count", type=int, default=1000)
    tr.add_argument("--seed", type=int, default=42)
    tr.add_argument("--proof-mode", action="store_true")
    tr.add_argument("--out", help="artifact directory")
    tr.set_defaults(func=cmd_ramsey_trials)
    s = rsub.add_parser("search-lower", parents=[budget])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--out", help="output .col file (stdout if omitted)")
    s.set_defaults(func=cmd_ramsey_search_lower)
    v = rsub.add_parser("verify")
    v.add_argument("--coloring", required=True)
    v.add_argument("--certificate", required=True)
    v.add_argument("--out", help="artifact directory")
    v.set_defaults(func=cmd_ramsey_verify)

    au = sub.add_parser("audit", help="decomposition audit")
    asub = au.add_subparsers(dest="action", required=True)
    d = asub.add_parser("decompose")
    d.add_argument("--graph", required=True)
    d.add_argument("--all-q", action="store_true")
    d.add_argument("--json", action="store_true", help="also print the JSON report")
    d.add_argument("--out", help="artifact directory")
    d.set_defaults(func=cmd_audit_decompose)
    sw = asub.add_parser("sweep")
    sw.add_argument("--n", type=int, default=12)
    sw.add_argument("--trials", type=int, default=1000)
    sw.add_argument("--seed", type=int, default=7)
    sw.add_argument("--all-q", action="store_true")
    sw.add_argument("--out", help="artifact directory")
    sw.set_defaults(func=cmd_audit_sweep)
    lm = asub.add_parser("structure-sweep", parents=[budget])
    lm.add_argument("--n", type=int, default=7)
    lm.add_argument("--out", help="artifact directory")
    lm.set_defaults(func=cmd_audit_structure)

    tb = sub.add_parser("tables", parents=[budget], help="reference P-ladder tables")
    tb.add_argument("--max-n", type=int, default=20)
    tb.add_argument("--computed-max-n", type=int, default=8)
    tb.add_argument("--out", help="artifact directory")
    tb.set_defaults(func=cmd_tables)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    run = _Run(args)
    try:
        return args.func(run)
    except IncompleteSearchError as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (LoosePathError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
