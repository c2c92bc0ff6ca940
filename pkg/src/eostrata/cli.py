"""``eo`` command line: curve, sweep, module, types."""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterable, Sequence

from .curve import (
    FAMILIES,
    ConstraintViolation,
    CurveError,
    SingularCurve,
    curve_from_json,
    make_family,
    parse_element,
)
from .derham import eo_type_of_curve
from .eo import (
    EOError,
    ModuleInvalid,
    SymplecticSemilinearModule,
    analyse_module,
    covering_relations,
    direct_sum,
    enumerate_eo_types,
    parse_block,
)
from .ff import FieldError, FieldSpec, field, parse_field

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONSTRAINT = 3
EXIT_SINGULAR = 4
EXIT_INVALID_MODULE = 5
EXIT_INTERNAL = 70

WORKERS_ENV = "EO_WORKERS"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def parse_params(text: str | None) -> dict[str, str]:
    """``b=1,c=0,d=2t+1`` -> {"b": "1", ...}; values are parsed later."""
    out: dict[str, str] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _field_header(F: FieldSpec) -> dict:
    return {"label": F.label(), "modulus": F.modulus_str(), **F.to_json()}


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------
def cmd_curve(args) -> int:
    if args.json:
        data = json.loads(Path(args.json).read_text())
        curve = curve_from_json(data)
    else:
        if not args.family or not args.field:
            raise UsageError("curve needs --json or both --family and --field")
        F = parse_field(args.field)
        curve = make_family(args.family, parse_params(args.params), F)
    rep = eo_type_of_curve(curve, args.method)
    out = rep.to_json()
    out["field"] = _field_header(curve.field)
    out["mu_str"] = str(rep.mu) if rep.mu is not None else None
    print(_dump(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------
CSV_TAIL = ("a", "f", "mu", "method", "status")


@dataclass
class SweepReport:
    field: FieldSpec
    family: str
    names: tuple
    enumerated: int = 0
    tally: dict = dc_field(default_factory=dict)
    rejected: dict = dc_field(default_factory=lambda: {"singular": 0, "constraint": 0})
    errors: int = 0
    witnesses: dict = dc_field(default_factory=dict)
    rejected_witnesses: dict = dc_field(default_factory=dict)
    methods: dict = dc_field(default_factory=lambda: {"full": 0, "cartier-only": 0, "ambiguous": 0})

    @property
    def classified(self) -> int:
        return sum(self.tally.values())

    def add(self, row: dict) -> None:
        self.enumerated += 1
        params = {n: row[n] for n in self.names}
        status = row["status"]
        if status == "ok":
            key = row["mu"]
            self.tally[key] = self.tally.get(key, 0) + 1
            self.witnesses.setdefault(key, params)
            self.methods[row["method"]] += 1
        elif status in self.rejected:
            self.rejected[status] += 1
            self.rejected_witnesses.setdefault(status, params)
        else:
            self.errors += 1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "field": _field_header(self.field),
            "parameters": list(self.names),
            "enumerated": self.enumerated,
            "classified": self.classified,
            "rejected": dict(self.rejected),
            "errors": self.errors,
            "tally": dict(sorted(self.tally.items())),
            "witnesses": dict(sorted(self.witnesses.items())),
            "rejected_witnesses": dict(sorted(self.rejected_witnesses.items())),
            "methods": dict(self.methods),
        }


def classify_point(job: tuple) -> dict:
    """Worker: (family, field json, method, ((name, value-str), ...)) -> CSV row."""
    family, fjson, method, items = job
    F = FieldSpec.from_json(fjson)
    row: dict = {"family": family, "field": F.label(), **dict(items)}
    row.update(a="", f="", mu="", method="")
    try:
        curve = make_family(family, dict(items), F)
    except SingularCurve:
        row["status"] = "singular"
        return row
    except ConstraintViolation:
        row["status"] = "constraint"
        return row
    try:
        rep = eo_type_of_curve(curve, method)
    except Exception as exc:  # noqa: BLE001 - a bad point must not kill the sweep
        row["status"] = f"error:{type(exc).__name__}"
        return row
    row.update(a=rep.a, f=rep.f)
    if rep.ambiguous:
        row["mu"] = "|".join(str(m) for m in rep.candidates)
        row["method"] = "ambiguous"
    else:
        row["mu"] = str(rep.mu)
        row["method"] = rep.method
    row["status"] = "ok"
    return row


def parse_ranges(F: FieldSpec, names: Sequence[str], specs: Iterable[str]) -> dict[str, list[int]]:
    """``name=v1:v2:...`` restricts a parameter; unspecified ones run over the field."""
    ranges = {n: list(range(F.q)) for n in names}
    for spec in specs or ():
        if "=" not in spec:
            raise UsageError(f"range {spec!r} is not of the form name=v1:v2")
        n, vals = spec.split("=", 1)
        n = n.strip()
        if n not in ranges:
            raise UsageError(f"unknown parameter {n!r}; sweepable: {', '.join(names)}")
        ranges[n] = sorted({parse_element(F, v) for v in vals.split(":") if v.strip()})
    return ranges


def worker_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def run_sweep(family: str, F: FieldSpec, ranges: dict[str, list[int]] | None = None,
              method: str = "full", workers: int = 1) -> tuple[SweepReport, list[dict]]:
    if family not in FAMILIES:
        raise UsageError(f"sweep needs a named family, got {family!r}")
    names = FAMILIES[family].free
    if ranges is None:
        ranges = {n: list(range(F.q)) for n in names}
    fj = F.to_json()
    jobs = [(family, fj, method, tuple((n, F.to_str(v)) for n, v in zip(names, pt)))
            for pt in itertools.product(*(ranges[n] for n in names))]
    if workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(classify_point, jobs, chunksize=chunk))
    else:
        rows = [classify_point(j) for j in jobs]
    rep = SweepReport(F, family, tuple(names))
    for r in rows:
        rep.add(r)
    return rep, rows


def rows_to_csv(names: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("family", "field", *names, *CSV_TAIL))
    for r in rows:
        w.writerow([r["family"], r["field"], *(r[n] for n in names), *(r[c] for c in CSV_TAIL)])
    return buf.getvalue()


def growth(family: str, kmax: int, method: str, workers: int) -> dict:
    """Valid-point counts per type for k = 1..kmax with log_3 of each count."""
    steps = []
    for k in range(1, kmax + 1):
        F = field(3, k)
        rep, _ = run_sweep(family, F, None, method, workers)
        steps.append({
            "k": k,
            "q": F.q,
            "field": _field_header(F),
            "valid": rep.classified,
            "tally": dict(sorted(rep.tally.items())),
            "log3": {m: round(math.log(c, 3), 4) for m, c in sorted(rep.tally.items())},
        })
    return {"family": family, "mode": "growth", "steps": steps}


def cmd_sweep(args) -> int:
    workers = worker_count(args.workers)
    if args.growth:
        out = growth(args.family, args.kmax, args.method, workers)
        text = _dump(out) + "\n"
        if args.out:
            Path(f"{args.out}.json").write_text(text)
        sys.stdout.write(text)
        return EXIT_OK
    if not args.field:
        raise UsageError("sweep needs --field (or --growth)")
    F = parse_field(args.field)
    if args.family not in FAMILIES:
        raise UsageError(f"sweep needs a named family, got {args.family!r}")
    names = FAMILIES[args.family].free
    rep, rows = run_sweep(args.family, F, parse_ranges(F, names, args.range), args.method, workers)
    summary = _dump(rep.to_json()) + "\n"
    if args.out:
        Path(f"{args.out}.csv").write_text(rows_to_csv(names, rows))
        Path(f"{args.out}.json").write_text(summary)
    else:
        sys.stdout.write(rows_to_csv(names, rows))
    sys.stdout.write(summary)
    return EXIT_OK


# ---------------------------------------------------------------------------
# module
# ---------------------------------------------------------------------------
def _load_module(ref: str, F: FieldSpec) -> SymplecticSemilinearModule:
    p = Path(ref)
    if p.is_file():
        return SymplecticSemilinearModule.from_json(json.loads(p.read_text()))
    return parse_block(ref, F)


def cmd_module(args) -> int:
    F = parse_field(args.field)
    try:
        M = _load_module(args.module, F)
        if args.direct_sum:
            M = direct_sum(M, _load_module(args.direct_sum, M.field))
        rep = analyse_module(M)
    except ModuleInvalid as exc:
        print(f"eo: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(_dump(exc.report.to_json()), file=sys.stderr)
        return EXIT_INVALID_MODULE
    out = rep.to_json()
    out["mu_str"] = str(rep.mu)
    print(_dump(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------
def cmd_types(args) -> int:
    g = args.g
    if not 1 <= g <= 6:
        raise UsageError("g must lie in 1..6")
    types = enumerate_eo_types(g)
    cover = covering_relations(g)
    if args.json:
        print(_dump({
            "g": g,
            "types": [{"mu": m.to_json(), "codim": m.codim, "f": m.p_rank, "a": m.a_number} for m in types],
            "covers": [[a.to_json(), b.to_json()] for a, b in cover],
        }))
        return EXIT_OK
    width = max(len(str(m)) for m in types) + 2
    print(f"{'mu':<{width}}codim  f  a")
    for m in types:
        print(f"{str(m):<{width}}{m.codim:>5}  {m.p_rank}  {m.a_number}")
    print()
    print("covering relations (lower < upper):")
    for a, b in cover:
        print(f"  {a} < {b}")
    return EXIT_OK


# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eo", description="Ekedahl-Oort invariants of genus-4 curves in characteristic 3")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("curve", help="classify one curve")
    c.add_argument("--family", choices=sorted(FAMILIES))
    c.add_argument("--field", help="3^k")
    c.add_argument("--params", help="name=value,... (values like 2 or 2t+1)")
    c.add_argument("--json", help="curve JSON file instead of flags")
    c.add_argument("--method", choices=("full", "cartier-only"), default="full")
    c.set_defaults(func=cmd_curve)

    s = sub.add_parser("sweep", help="classify every point of a parameter box")
    s.add_argument("--family", required=True, choices=sorted(FAMILIES))
    s.add_argument("--field", help="3^k")
    s.add_argument("--range", action="append", metavar="NAME=V1:V2", help="restrict one parameter")
    s.add_argument("--method", choices=("full", "cartier-only"), default="full")
    s.add_argument("--out", help="write OUT.csv and OUT.json")
    s.add_argument("--workers", type=int, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    s.add_argument("--growth", action="store_true", help="valid counts per type for k=1..KMAX")
    s.add_argument("--kmax", type=int, default=3)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("module", help="analyse a symplectic semilinear module")
    m.add_argument("module", help="module JSON file or block such as [2,1]@g3 / ordinary-elliptic")
    m.add_argument("--direct-sum", metavar="MODULE2")
    m.add_argument("--field", default="3^1", help="field for named blocks (default 3^1)")
    m.set_defaults(func=cmd_module)

    t = sub.add_parser("types", help="list EO types of genus g")
    t.add_argument("g", type=int)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_types)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SingularCurve as exc:
        print(f"eo: singular curve: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ConstraintViolation, CurveError) as exc:
        print(f"eo: constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (UsageError, FieldError, EOError, json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"eo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"eo: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
