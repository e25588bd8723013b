"""Command-line front end for the verification laboratory.

Subcommands run the symbolic suites, the commutant solver, the spectrum
classification table, and the numerical grid studies, and render one
report as text or JSON.  Exit code 0 means every check passed (recorded
rows do not fail a run), 1 means at least one check failed, 2 means the
invocation itself was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, commutant, gridlab
from .report import PASS, RECORDED, RelationReport

_KINDS = ("antiunitary", "unitary")
_SPECTRUM_PHRASE = {
    frozenset({"up", "down"}): "up or down spectrum only",
    frozenset({"symmetric"}): "symmetric spectrum",
}


def _phrase(kinds: set[str]) -> str:
    return _SPECTRUM_PHRASE[frozenset(kinds)]


def cmd_verify(args) -> RelationReport:
    rep = catalog.build(args.rep, args.two_s)
    print(f"verifying {rep.label} at two_s={rep.two_s}", file=sys.stderr)
    return catalog.full_verification(rep)


def cmd_commutant(args) -> RelationReport:
    rep = catalog.build(args.rep, args.two_s)
    report = RelationReport(rep.label, rep.two_s)
    problem = commutant.reduce_to_constant_blocks(rep)
    result = commutant.commutant_basis(problem)
    report.add(
        "identity-in-commutant",
        "linear-solve",
        commutant.contains(result, commutant.identity_matrix(rep.blocks)),
        "identity block matrix solves the constraint system",
    )
    ok_basis = all(commutant.check_solution(problem, m) for m in result.basis)
    report.add(
        "basis-satisfies-constraints",
        "linear-solve",
        ok_basis,
        f"{result.dimension} basis matrices recheck against every constraint",
    )
    word = "irreducible" if result.dimension == 1 else "reducible"
    report.add(
        "commutant-dimension",
        "linear-solve",
        result.dimension >= 1,
        f"{word}, dim {result.dimension}",
    )
    print(f"{rep.label}: {word}, dim {result.dimension}", file=sys.stderr)
    return report


def cmd_classify(args) -> RelationReport:
    pairs = (
        [(args.theta, args.pi)]
        if args.theta and args.pi
        else [(t, p) for t in _KINDS for p in _KINDS]
    )
    report = RelationReport("classification-table", 0)
    for theta_kind, pi_kind in pairs:
        kinds = catalog.allowed_spectra(theta_kind, pi_kind)
        report.add(
            f"spectrum(theta={theta_kind}, pi={pi_kind})",
            "symbolic",
            True,
            _phrase(kinds),
        )
    return report


def cmd_grid(args) -> RelationReport:
    rep = catalog.build(args.rep, args.two_s)
    sizes = args.n
    grids = [gridlab.Grid(args.extent, n, args.mu) for n in sizes]
    if len(grids) < 3:
        raise ValueError("non-nested grid sequence: need at least three grids")
    report = RelationReport(rep.label, rep.two_s)
    relations = gridlab.representative_relations(rep)
    print(
        f"running {len(relations)} convergence studies on N={sizes}",
        file=sys.stderr,
    )
    for rid in relations:
        study = gridlab.convergence_study(rep, rid, grids)
        report.add(rid, "numeric", study.ok, study.detail())
    state = gridlab.standard_state(rep, grids[-1])
    defects = gridlab.isometry_defect(rep, state)
    for op_name, defect in defects.items():
        report.add(
            f"{op_name} norm preservation",
            "numeric",
            defect < gridlab.EXACT_TOL,
            f"relative defect {defect:.3e}",
        )
    return report


_CATALOG_GROUPS = (
    ("up", ("up",)),
    ("down", ("down",)),
    ("sym1", ("sym1",)),
    ("sym2", ("sym2",)),
    ("sym3", ("sym3",)),
    ("sym4", ("sym4",)),
    ("sym5", ("sym5",)),
    ("sym6", ("sym6",)),
    ("newup", ("newup:identity", "newup:symplectic")),
    ("newdown", ("newdown:identity", "newdown:symplectic")),
    ("quad:+1", ("quad:+1",)),
    ("quad:-1", ("quad:-1",)),
)


def _sign_word(value) -> str:
    return "+1" if value.to_complex().real > 0 else "-1"


def cmd_catalog(args) -> RelationReport:
    report = RelationReport("catalog", args.two_s)
    for group, labels in _CATALOG_GROUPS:
        if group.startswith("quad") and args.two_s != 0:
            continue
        reps = [catalog.build(lbl, args.two_s) for lbl in labels]
        head = reps[0]
        ok = all(
            r.theta_kind == head.theta_kind
            and r.pi_kind == head.pi_kind
            and r.spectrum == head.spectrum
            for r in reps
        )
        ok = ok and head.spectrum in catalog.allowed_spectra(
            head.theta_kind, head.pi_kind
        )
        cols = [
            f"theta {head.theta_kind} (theta^2 = {_sign_word(head.theta_square)})",
            f"pi {head.pi_kind} (pi^2 = {_sign_word(head.pi_square)})",
            f"spectrum {head.spectrum}",
        ]
        verdicts = []
        for r in reps:
            v = commutant.irreducibility_verdict(r)
            word = "irreducible" if v.irreducible else "reducible"
            tag = f" [{r.label.split(':', 1)[1]}]" if len(reps) > 1 else ""
            verdicts.append(f"{word}, dim {v.dimension}{tag}")
        cols.append("; ".join(verdicts))
        report.add(group, "linear-solve", ok, "; ".join(cols))
    return report


def render_text(report: RelationReport) -> str:
    doc = report.as_dict()
    lines = [f"{doc['representation']} (two_s = {doc['two_s']})"]
    width = max(len(c["name"]) for c in doc["checks"])
    for chk in doc["checks"]:
        lines.append(
            f"  {chk['status']:8s} {chk['method']:12s} "
            f"{chk['name']:{width}s}  {chk['detail']}"
        )
    npass = sum(1 for c in doc["checks"] if c["status"] == PASS)
    nfail = sum(1 for c in doc["checks"] if c["status"] == "fail")
    nrec = sum(1 for c in doc["checks"] if c["status"] == RECORDED)
    lines.append(
        f"{len(doc['checks'])} checks: {npass} pass, {nfail} fail, {nrec} recorded"
    )
    return "\n".join(lines)


def _sizes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid size list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poincarelab",
        description="verification laboratory for mass-shell representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rep_required=True):
        p.add_argument("--rep", required=rep_required, help="representation label")
        p.add_argument("--two-s", type=int, default=0, dest="two_s",
                       help="twice the spin (default 0)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="also write the report to this file")

    p = sub.add_parser("verify", help="run the symbolic relation suites")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("commutant", help="solve for the commutant")
    common(p)
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("classify", help="allowed spectrum per symmetry kinds")
    p.add_argument("--theta", choices=_KINDS)
    p.add_argument("--pi", choices=_KINDS)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("grid", help="numerical convergence studies")
    common(p)
    p.add_argument("--mu", type=float, default=1.0, help="mass (default 1.0)")
    p.add_argument("--n", type=_sizes, default=[32, 64, 128],
                   help="comma-separated grid sizes (default 32,64,128)")
    p.add_argument("--extent", type=float, default=4.0,
                   help="half-width of the momentum cube (default 4.0)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("catalog", help="summarize the whole catalog")
    p.add_argument("--two-s", type=int, default=0, dest="two_s")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = (
        json.dumps(report.as_dict(), indent=2)
        if args.json
        else render_text(report)
    )
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return 0 if report.all_passed() else 1


if __name__ == "__main__":
    sys.exit(main())
