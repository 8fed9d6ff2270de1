"""Command-line interface: ``mcg-farrell {torsion,classes,farrell,reproduce,verify}``.

Exit codes: 0 success, 2 invalid or unsupported input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .assembly import FarrellReport, PeriodicCohomology, farrell, paper_results, select_rule
from .cohen import CohenTables
from .errors import DomainError, FarrellError, UnsupportedCase
from .fpdata import FixedPointData, enumerate_classes, sym_part
from .rh import RHSolution, admissible_solutions, is_prime, remark_table, torsion_primes
from .verify import FLAG, Check, exit_code, known_flags, run_checks

EXIT_OK, EXIT_INPUT = 0, 2

GENUS_TABLES = {
    "genus1": (1, (2, 3), range(1, 7)),
    "genus2": (2, (3, 5), range(1, 9)),
    "genus3": (3, (3, 5, 7), range(1, 11)),
}


def _group(g: int, i: int) -> str:
    return f"Γ_{g}^{i}"


# -- report types -------------------------------------------------------------


@dataclass(frozen=True)
class TorsionReport:
    g: int
    i: int
    solutions: tuple[tuple[int, tuple[RHSolution, ...]], ...]

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "i": self.i,
            "primes": [
                {"p": p, "solutions": [[s.h, s.t] for s in sols]} for p, sols in self.solutions
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> TorsionReport:
        return cls(
            d["g"],
            d["i"],
            tuple((e["p"], tuple(RHSolution(h, t) for h, t in e["solutions"])) for e in d["primes"]),
        )

    def text(self) -> str:
        torsion = [p for p, sols in self.solutions if sols]
        if not torsion:
            return f"{_group(self.g, self.i)}: no torsion"
        lines = [f"{_group(self.g, self.i)}: torsion primes {', '.join(map(str, torsion))}"]
        for p, sols in self.solutions:
            shown = ", ".join(map(str, sols)) if sols else "none"
            lines.append(f"  p={p}: {shown}")
        return "\n".join(lines)


@dataclass(frozen=True)
class ClassEntry:
    data: FixedPointData
    solution: RHSolution
    rule: str | None

    def to_dict(self) -> dict:
        return {
            "data": self.data.to_dict(),
            "h": self.solution.h,
            "t": self.solution.t,
            "sym": list(sym_part(self.data).multiplicities),
            "rule": self.rule,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ClassEntry:
        return cls(FixedPointData.from_dict(d["data"]), RHSolution(d["h"], d["t"]), d["rule"])


@dataclass(frozen=True)
class ClassesReport:
    g: int
    i: int
    p: int
    classes: tuple[ClassEntry, ...]

    def to_dict(self) -> dict:
        return {"g": self.g, "i": self.i, "p": self.p, "classes": [c.to_dict() for c in self.classes]}

    @classmethod
    def from_dict(cls, d: dict) -> ClassesReport:
        return cls(d["g"], d["i"], d["p"], tuple(ClassEntry.from_dict(c) for c in d["classes"]))

    def text(self) -> str:
        head = f"{_group(self.g, self.i)}, p={self.p}: {len(self.classes)} classes"
        rows = [
            f"  {str(c.data):<16} (h,t)={c.solution}  {sym_part(c.data)}  {c.rule or 'unsupported'}"
            for c in self.classes
        ]
        return "\n".join([head] + rows)


@dataclass(frozen=True)
class TableRow:
    label: str
    engine: str
    stated: str
    status: str

    def to_dict(self) -> dict:
        return {"label": self.label, "engine": self.engine, "stated": self.stated, "status": self.status}

    @classmethod
    def from_dict(cls, d: dict) -> TableRow:
        return cls(d["label"], d["engine"], d["stated"], d["status"])


@dataclass(frozen=True)
class TableReport:
    table: str
    rows: tuple[TableRow, ...]

    def to_dict(self) -> dict:
        return {"table": self.table, "rows": [r.to_dict() for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> TableReport:
        return cls(d["table"], tuple(TableRow.from_dict(r) for r in d["rows"]))

    def text(self) -> str:
        w = max((len(r.label) for r in self.rows), default=0)
        lines = [f"table {self.table}"]
        for r in self.rows:
            lines.append(f"  {r.label:<{w}}  {r.status:<10} engine: {r.engine}")
            if r.stated != r.engine:
                lines.append(f"  {'':<{w}}  {'':<10} stated: {r.stated}")
        return "\n".join(lines)


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[Check, ...]

    @property
    def exit_code(self) -> int:
        return exit_code(list(self.checks))

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "exit": self.exit_code}

    @classmethod
    def from_dict(cls, d: dict) -> VerifyReport:
        return cls(tuple(Check(c["status"], c["name"], c["detail"]) for c in d["checks"]))

    def text(self) -> str:
        reasons = known_flags()
        lines = []
        for c in self.checks:
            line = f"{c.status}  {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.status == FLAG:
                lines.append(f"      known: {reasons[c.name]}")
        counts = {s: sum(c.status == s for c in self.checks) for s in ("PASS", "FAIL", "FLAG", "NOTE")}
        lines.append(
            f"verify: {counts['PASS']} passed, {counts['FAIL']} failed, "
            f"{counts['FLAG']} known flags, {counts['NOTE']} notes"
        )
        return "\n".join(lines)


def farrell_text(rep: FarrellReport) -> str:
    lines = [f"{_group(rep.g, rep.i)}, p={rep.p}: {len(rep.classes)} classes"]
    for c in rep.classes:
        lines.append(
            f"  {str(c.data):<16} (h,t)={c.solution}  {c.sym}  {c.rule}  "
            f"even: {c.normalizer.even}  odd: {c.normalizer.odd}"
        )
    lines.append(f"total   even: {rep.engine_total.even}  odd: {rep.engine_total.odd}")
    if rep.paper_total is not None:
        lines.append(f"stated  even: {rep.paper_total.even}  odd: {rep.paper_total.odd}")
    if rep.discrepancy:
        lines.append("DISCREPANCY: the per-class total differs from the stated total")
    return "\n".join(lines)


# -- commands -----------------------------------------------------------------


def cmd_torsion(args) -> TorsionReport:
    if args.prime is not None:
        if not is_prime(args.prime):
            raise DomainError(f"{args.prime} is not prime")
        primes = (args.prime,)
    else:
        primes = torsion_primes(args.genus, args.punctures)
    sols = tuple((p, admissible_solutions(args.genus, args.punctures, p)) for p in primes)
    return TorsionReport(args.genus, args.punctures, sols)


def cmd_classes(args) -> ClassesReport:
    if args.genus < 1 or args.punctures < 1:
        raise DomainError("genus and punctures must be >= 1")
    entries = []
    for data, sol in enumerate_classes(args.genus, args.punctures, args.prime):
        try:
            rule = select_rule(data, sol)
        except UnsupportedCase:
            rule = None
        entries.append(ClassEntry(data, sol, rule))
    return ClassesReport(args.genus, args.punctures, args.prime, tuple(entries))


def cmd_farrell(args) -> FarrellReport:
    return farrell(args.genus, args.punctures, args.prime)


def _genus_rows(g: int, primes, punctures) -> list[TableRow]:
    results = paper_results()
    rows = []
    for i in punctures:
        for p in primes:
            label = f"{_group(g, i)} p={p}"
            stated = results.total(g, i, p)
            ref = results.reference(g, i, p)
            if stated is None and ref is not None:
                stated = (ref[0], None)
                origin = f"{ref[1]['name']} reference"
            else:
                origin = ""
            try:
                engine: PeriodicCohomology | None = farrell(g, i, p).engine_total
                engine_text = str(engine)
            except UnsupportedCase as exc:
                engine, engine_text = None, f"unsupported ({exc})"
            if stated is None:
                status = "unstated"
                stated_text = "not stated"
            else:
                stated_text = str(stated[0]) + (f" [{origin}]" if origin else "")
                if engine is None:
                    status = "reference" if origin else "unsupported"
                elif engine == stated[0]:
                    status = "match"
                else:
                    status = "FLAG"
            rows.append(TableRow(label, engine_text, stated_text, status))
    return rows


def cmd_reproduce(args) -> TableReport:
    name = args.table
    if name == "remark":
        rt = paper_results().data["remark_table"]
        table = remark_table()
        rows = []
        for row in rt["rows"]:
            label = ", ".join(_group(g, i) for g, i in row["groups"])
            for p, text in zip(rt["primes"], row["cells"]):
                stated = {s.strip() for s in text.split(" or ")} - {"No"}
                found = [{str(s) for s in table[(g, i), p]} for g, i in row["groups"]]
                engine = " | ".join(sorted({" or ".join(sorted(f)) or "No" for f in map(frozenset, found)}))
                status = "match" if all(f == stated for f in found) else "MISMATCH"
                rows.append(TableRow(f"{label} p={p}", engine, text, status))
        return TableReport(name, tuple(rows))
    if name == "genus-p":
        p = args.prime
        if p is None or p <= 3 or not is_prime(p):
            raise DomainError("--table genus-p needs --prime P with P > 3 prime")
        return TableReport(f"genus-p (p={p})", tuple(_genus_rows(p, (p,), range(1, 5))))
    g, primes, punctures = GENUS_TABLES[name]
    return TableReport(name, tuple(_genus_rows(g, primes, punctures)))


def cmd_verify(args) -> VerifyReport:
    if args.actions is not None:
        try:
            tables = CohenTables.load(args.actions)
        except (OSError, ValueError, FarrellError, KeyError, TypeError) as exc:
            return VerifyReport((Check("FAIL", "curated table", f"{type(exc).__name__}: {exc}"),))
    else:
        tables = CohenTables.load()
    return VerifyReport(tuple(run_checks(tables, paper_literal=args.paper_literal)))


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="mcg-farrell",
        description="p-primary Farrell cohomology of pure mapping class groups Γ_g^i.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torsion", parents=[fmt], help="torsion primes and admissible (h,t)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--prime", type=int)

    for name, help_ in (
        ("classes", "conjugacy classes of order-p subgroups"),
        ("farrell", "Farrell cohomology per class and in total"),
    ):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--punctures", type=int, required=True)
        p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("reproduce", parents=[fmt], help="reproduce a full table")
    p.add_argument("--table", required=True, choices=("remark", *GENUS_TABLES, "genus-p"))
    p.add_argument("--prime", type=int)

    p = sub.add_parser("verify", parents=[fmt], help="run the self-verification suite")
    p.add_argument("--actions", help="curated action table to verify instead of the bundled one")
    p.add_argument("--paper-literal", action="store_true", help="use the matrices exactly as printed")
    return parser


COMMANDS = {
    "torsion": cmd_torsion,
    "classes": cmd_classes,
    "farrell": cmd_farrell,
    "reproduce": cmd_reproduce,
    "verify": cmd_verify,
}


def render(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)
    if isinstance(report, FarrellReport):
        return farrell_text(report)
    return report.text()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except FarrellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.format))
    if isinstance(report, VerifyReport):
        return report.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
