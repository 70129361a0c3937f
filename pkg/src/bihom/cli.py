"""Command-line front end: ``bihom check | twist | derive | rb-search | catalog``.

Exit codes: 0 pass, 1 identity or hypothesis violation, 2 input error,
3 search budget exceeded. Reports are deterministic; ``--timestamps`` opts
into a generation time.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import constructions as C
from .catalog import catalog_get, catalog_list
from .checkers import check_kind, check_rota_baxter, kind_identities, rgraf_witnesses
from .errors import (
    AlgebraFileError, BiHomError, BudgetExceeded, FieldMismatch, HypothesisError, InstanceError,
    NotBijectiveError,
)
from .io import (
    AlgebraDocument, NamedOperator, algebra_payload, content_digest, document_digest,
    operator_payload, parse_algebra_document, parse_operator_file, render_payload,
)
from .linalg import LinearOperator
from .model import AlgebraInstance, AlgebraKind
from .rbsearch import Ansatz, SearchConfig, enumerate_rb_fp, lift_to_rationals, reduce_mod_p
from .scalars import QQ, PrimeField, format_scalar

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

CONSTRUCTIONS = ("prelie-bracket", "rb-prelie-left", "rb-prelie-right", "rb-bracket", "rb-assoc",
                 "dendriform-split")


class InputError(Exception):
    """Bad command-line input (unreadable file, unknown catalog id, ...)."""


# -- report building ---------------------------------------------------------

def witness_payload(w, basis) -> dict:
    return {
        "identity": w.identity_label,
        "indices": list(w.basis_indices),
        "basis": [basis[i] for i in w.basis_indices],
        "residual": [format_scalar(x) for x in w.residual],
    }


def preamble_labels(a: AlgebraInstance) -> list:
    labels = ["maps-commute"]
    for p in sorted(a.products):
        labels += [f"alpha-multiplicative[{p}]", f"beta-multiplicative[{p}]"]
    return labels


def check_payload(a: AlgebraInstance, kind: AlgebraKind | None = None) -> dict:
    """Verdict per identity label plus every witness, for the given kind."""
    kind = kind or a.kind
    witnesses = check_kind(a, kind)
    labels = preamble_labels(a) + list(kind_identities(kind))
    failed = {w.identity_label for w in witnesses}
    return {
        "name": a.name,
        "kind": kind.value,
        "field": a.field.name,
        "dim": a.dim,
        "verdict": {lbl: ("fail" if lbl in failed else "pass") for lbl in labels},
        "witnesses": [witness_payload(w, a.basis) for w in witnesses],
    }


def _verdict_from_witnesses(labels, witnesses) -> dict:
    failed = {w.identity_label for w in witnesses}
    return {lbl: ("fail" if lbl in failed else "pass") for lbl in labels}


class Report:
    def __init__(self, command: str, options: dict):
        self.data = {"command": command, "options": options, "inputs": []}
        self.exit_code = EXIT_PASS

    def add_input(self, path: str, digest: str | None) -> None:
        self.data["inputs"].append({"path": path, "sha256": digest})

    def add(self, key: str, item) -> None:
        self.data.setdefault(key, []).append(item)

    def fail(self, code: int, message: str | None = None) -> None:
        self.exit_code = max(self.exit_code, code)
        if message:
            self.add("errors", message)

    def finish(self, timestamps: bool) -> dict:
        self.data["status"] = {EXIT_PASS: "pass", EXIT_VIOLATION: "fail",
                               EXIT_INPUT: "input-error", EXIT_BUDGET: "budget-exceeded"}[self.exit_code]
        self.data["exit_code"] = self.exit_code
        if timestamps:
            self.data["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return self.data


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _render_check(res: dict, indent: str) -> list:
    lines = [f"{indent}{res['name']} ({res['kind']}, {res['field']}, dim {res['dim']})"]
    width = max((len(lbl) for lbl in res["verdict"]), default=0)
    for lbl, v in res["verdict"].items():
        n = sum(1 for w in res["witnesses"] if w["identity"] == lbl)
        extra = f"  {n} witness(es)" if n else ""
        lines.append(f"{indent}  {lbl.ljust(width)}  {v.upper() if v == 'fail' else v}{extra}")
    for w in res["witnesses"]:
        lines.append(f"{indent}    {w['identity']} at ({', '.join(w['basis'])}): "
                     f"residual [{', '.join(w['residual'])}]")
    return lines


def render_text(data: dict) -> str:
    lines = [f"command  {data['command']}"]
    for key, val in data["options"].items():
        lines.append(f"option   {key} = {val}")
    for inp in data["inputs"]:
        lines.append(f"input    {inp['path']}  {inp['sha256'] or '-'}")
    for res in data.get("checks", []):
        lines += _render_check(res, "")
    for h in data.get("hypotheses", []):
        lines.append(f"hypothesis {h['clause']}: FAIL")
        if h.get("message"):
            lines.append(f"  {h['message']}")
        for w in h["witnesses"]:
            lines.append(f"  {w['identity']} at ({', '.join(w['basis'])}): "
                         f"residual [{', '.join(w['residual'])}]")
    for out in data.get("outputs", []):
        lines.append(f"output   {out['algebra']['name']}")
        lines += _render_check(out["recheck"], "  ")
        lines.append(render_payload(out["algebra"], "  "))
    if "operators" in data:
        lines.append(f"operators  {len(data['operators'])} found")
        for n, op in enumerate(data["operators"]):
            rows = "; ".join(" ".join(r) for r in op["matrix"])
            lines.append(f"  [{n}] weight {op['weight']}  [{rows}]")
            if "lift" in op:
                lift = op["lift"]
                if lift is None:
                    lines.append("      lift: none in search box")
                else:
                    lines.append(f"      lift: weight {lift['weight']}  "
                                 f"[{'; '.join(' '.join(r) for r in lift['matrix'])}]")
    for entry in data.get("entries", []):
        lines.append(f"  {entry['id'].ljust(10)} {entry['kind'].ljust(18)} dim {entry['dim']}")
    for msg in data.get("errors", []):
        lines.append(f"error    {msg}")
    lines.append(f"status   {data['status']} (exit {data['exit_code']})")
    if "generated_at" in data:
        lines.append(f"generated {data['generated_at']}")
    return "\n".join(lines) + "\n"


# -- input helpers -----------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: cannot read ({exc.__class__.__name__}: {exc})") from None


def _load_doc(path: str, report: Report) -> AlgebraDocument:
    doc = parse_algebra_document(_read(path))
    report.add_input(path, document_digest(doc))
    return doc


def _load_operator(path: str | None, a: AlgebraInstance, report: Report, role: str) -> LinearOperator:
    if path is None:
        return LinearOperator.identity(a.dim, a.field)
    op = parse_operator_file(_read(path), a.dim)
    if op.R.field != a.field:
        raise InputError(f"{role} is over {op.R.field.name}, the algebra over {a.field.name}")
    report.add_input(path, content_digest(render_payload(operator_payload(op, a.field)) + "\n"))
    return op.R


def _output(report: Report, a: AlgebraInstance, extra_labels=(), extra_witnesses=(),
            operators=()) -> None:
    res = check_payload(a)
    if extra_labels:
        res["verdict"].update(_verdict_from_witnesses(extra_labels, extra_witnesses))
        res["witnesses"] += [witness_payload(w, a.basis) for w in extra_witnesses]
    if res["witnesses"]:
        report.fail(EXIT_VIOLATION)
    report.add("outputs", {"algebra": algebra_payload(a, operators), "recheck": res})


def _hypothesis(report: Report, exc: HypothesisError, basis) -> None:
    entry = {"clause": exc.clause, "witnesses": [witness_payload(w, basis) for w in exc.witnesses]}
    if not exc.witnesses:
        entry["message"] = str(exc)
    report.add("hypotheses", entry)
    report.fail(EXIT_VIOLATION)


# -- commands ----------------------------------------------------------------

def cmd_check(args, report: Report) -> None:
    kind = AlgebraKind(args.kind_override) if args.kind_override else None
    for path in sorted(args.paths):
        try:
            doc = _load_doc(path, report)
            res = check_payload(doc.instance, kind)
        except (AlgebraFileError, InputError, InstanceError) as exc:
            report.add_input(path, None)
            report.fail(EXIT_INPUT, f"{path}: {exc}")
            continue
        report.add("checks", res)
        if res["witnesses"]:
            report.fail(EXIT_VIOLATION)


def cmd_twist(args, report: Report) -> None:
    doc = _load_doc(args.path, report)
    a = doc.instance
    alpha2 = _load_operator(args.alpha2, a, report, "alpha2")
    beta2 = _load_operator(args.beta2, a, report, "beta2")
    try:
        out = C.yau_twist(a, alpha2, beta2, unchecked=args.unchecked)
    except HypothesisError as exc:
        _hypothesis(report, exc, a.basis)
        return
    _output(report, out)


def _operator_and_weight(args, doc: AlgebraDocument):
    if not args.operator:
        raise InputError(f"--construction {args.construction} needs --operator NAME")
    op: NamedOperator = doc.operator(args.operator)
    if args.weight is not None:
        weight = doc.instance.field.parse(args.weight)
    elif op.weight is not None:
        weight = op.weight
    else:
        weight = doc.instance.field.zero
    return op, weight


def cmd_derive(args, report: Report) -> None:
    doc = _load_doc(args.path, report)
    a = doc.instance
    kind = args.construction
    try:
        if kind == "prelie-bracket":
            _output(report, C.prelie_derived_bracket(a, unchecked=args.unchecked))
        elif kind == "dendriform-split":
            for out in C.dendriform_to_prelie(a, unchecked=args.unchecked):
                _output(report, out)
        else:
            op, weight = _operator_and_weight(args, doc)
            kept = (NamedOperator(op.name, op.R, weight),)
            if kind in ("rb-prelie-left", "rb-prelie-right"):
                if weight:
                    raise InputError(f"{kind} needs a weight-0 operator, got {format_scalar(weight)}")
                fn = C.rb_prelie_left if kind == "rb-prelie-left" else C.rb_prelie_right
                _output(report, fn(a, op.R, unchecked=args.unchecked))
            elif kind == "rb-assoc":
                out = C.rb_assoc_derived_product(a, op.R, weight, unchecked=args.unchecked)
                _output(report, out, operators=kept)
            else:
                out = C.rb_derived_bracket(a, op.R, weight, unchecked=args.unchecked)
                # the operator must still be RB for the new bracket, and a morphism onto the old one
                recert = check_rota_baxter(out, None, op.R, weight)
                graf = rgraf_witnesses(out, a, op.R)
                labels = ("rb-homomorphism", "rota-baxter", "rb-commutes-alpha", "rb-commutes-beta")
                _output(report, out, labels, graf + recert, operators=kept)
    except HypothesisError as exc:
        _hypothesis(report, exc, a.basis)
    except NotBijectiveError as exc:
        report.fail(EXIT_VIOLATION, str(exc))


def cmd_rb_search(args, report: Report) -> None:
    doc = _load_doc(args.path, report)
    a = doc.instance
    if isinstance(a.field, PrimeField):
        if a.field.p != args.mod:
            raise InputError(f"algebra is over {a.field.name} but --mod is {args.mod}")
        a_fp = a
    else:
        a_fp = reduce_mod_p(a, args.mod)
    weight = QQ.parse(args.weight) if a.field == QQ else a.field.parse(args.weight)
    cfg = SearchConfig(modulus=args.mod, weight=weight if a.field == QQ else weight.value,
                       require_commute_with_maps=not args.no_commute,
                       ansatz=Ansatz(args.ansatz), max_candidates=args.max_candidates,
                       budget_bits=args.budget_bits)
    found = enumerate_rb_fp(a_fp, cfg)
    ops = report.data.setdefault("operators", [])
    for cert in found:
        entry = {"field": cert.field.name, "weight": format_scalar(cert.weight),
                 "matrix": [[format_scalar(x) for x in r] for r in cert.R.rows],
                 "commutes_with_maps": cert.commutes_with_maps}
        if args.lift:
            if a.field != QQ:
                raise InputError("--lift needs an algebra over Q")
            lifted = lift_to_rationals(a, cert, a_fp=a_fp, weight=weight)
            entry["lift"] = None if lifted is None else {
                "weight": format_scalar(lifted.weight),
                "matrix": [[format_scalar(x) for x in r] for r in lifted.R.rows]}
        ops.append(entry)
    report.data["truncated"] = len(found) >= args.max_candidates


def cmd_catalog(args, report: Report) -> None:
    if args.action == "list":
        for cid in catalog_list():
            inst = catalog_get(cid).instance
            report.add("entries", {"id": cid, "kind": inst.kind.value, "dim": inst.dim})
        return
    if not args.id:
        raise InputError("catalog export needs an entry id")
    try:
        entry = catalog_get(args.id)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    report.data["export"] = algebra_payload(entry.instance)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timestamps", action="store_true", help="add a generation time to the report")

    ap = argparse.ArgumentParser(prog="bihom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check algebra files against their kind")
    p.add_argument("paths", nargs="+")
    p.add_argument("--kind-override", choices=[k.value for k in AlgebraKind])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("twist", parents=[common], help="Yau twist by two operator files")
    p.add_argument("path")
    p.add_argument("--alpha2", help="operator file (default: identity)")
    p.add_argument("--beta2", help="operator file (default: identity)")
    p.add_argument("--unchecked", action="store_true", help="skip hypothesis checks")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("derive", parents=[common], help="derived product constructions")
    p.add_argument("path")
    p.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    p.add_argument("--operator", help="name of an operator in the file's 'operators' list")
    p.add_argument("--weight", help="RB weight, e.g. 0, -1, 1/2 (default: the operator's own)")
    p.add_argument("--unchecked", action="store_true", help="skip hypothesis checks")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("rb-search", parents=[common], help="enumerate RB operators over F_p")
    p.add_argument("path")
    p.add_argument("--weight", default="0")
    p.add_argument("--mod", type=int, default=5)
    p.add_argument("--ansatz", default="full", choices=[x.value for x in Ansatz])
    p.add_argument("--lift", action="store_true", help="also look for rational lifts")
    p.add_argument("--max-candidates", type=int, default=10_000)
    p.add_argument("--budget-bits", type=float, default=25.0)
    p.add_argument("--no-commute", action="store_true",
                   help="do not require R to commute with alpha and beta")
    p.set_defaults(func=cmd_rb_search)

    p = sub.add_parser("catalog", parents=[common], help="list or export bundled algebras")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return ap


def _options(args) -> dict:
    skip = {"func", "command", "json", "timestamps", "paths", "path"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False)}


def run(argv=None) -> tuple:
    """Run one command; return ``(exit_code, report_text)``."""
    args = build_parser().parse_args(argv)
    report = Report(args.command, _options(args))
    try:
        args.func(args, report)
    except (AlgebraFileError, InputError, InstanceError, FieldMismatch, ValueError) as exc:
        report.fail(EXIT_INPUT, str(exc))
    except BudgetExceeded as exc:
        report.fail(EXIT_BUDGET, str(exc))
    except BiHomError as exc:
        report.fail(EXIT_INPUT, str(exc))
    data = report.finish(args.timestamps)
    if args.command == "catalog" and args.action == "export" and "export" in data and not args.json:
        return report.exit_code, render_payload(data["export"]) + "\n"
    return report.exit_code, render_json(data) if args.json else render_text(data)


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
