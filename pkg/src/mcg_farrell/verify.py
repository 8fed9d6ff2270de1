"""Self-verification suite behind ``mcg-farrell verify``.

Each check yields ``Check`` records. A FLAG is an inconsistency that is
expected and listed in ``data/known_flags.json``; an unlisted flag counts as
a failure.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from importlib import resources

from .assembly import PaperResults, farrell, paper_results, split_product
from .cohen import CohenTables, parse_quote_image
from .errors import FarrellError
from .fpdata import SymPart, enumerate_classes, is_central, power_data
from .fplinalg import FpMatrix, Subspace, invariants, norm_map
from .rh import RHSolution, admissible_solutions, primes_upto, remark_table, solve_rh, torsion_primes

PASS, FAIL, FLAG, NOTE = "PASS", "FAIL", "FLAG", "NOTE"


@dataclass(frozen=True)
class Check:
    status: str
    name: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "name": self.name, "detail": self.detail}


def known_flags() -> dict[str, str]:
    text = resources.files("mcg_farrell").joinpath("data/known_flags.json").read_text()
    return {f["id"]: f["reason"] for f in json.loads(text)["flags"]}


def _result(name: str, problems: list[str], ok_detail: str = "") -> Check:
    if problems:
        return Check(FAIL, name, "; ".join(problems[:5]) + (" ..." if len(problems) > 5 else ""))
    return Check(PASS, name, ok_detail)


# -- brute-force oracles -------------------------------------------------


def brute_rh(g: int, p: int) -> set[RHSolution]:
    return {
        RHSolution(h, t)
        for h in range(g + 1)
        for t in range(2 * g + 3)
        if 2 * g - 2 == p * (2 * h - 2) + t * (p - 1)
    }


def brute_class_count(g: int, i: int, p: int) -> int:
    """Orbits of (Z/p)^x on all exponent tuples, the last t-i entries unordered."""
    total = 0
    for sol in admissible_solutions(g, i, p):
        seen = set()
        for tup in itertools.product(range(1, p), repeat=sol.t):
            if sum(tup) % p:
                continue
            seen.add(
                min(
                    (tuple(b * m % p for b in tup[:i]), tuple(sorted(b * m % p for b in tup[i:])))
                    for m in range(1, p)
                )
            )
        total += len(seen)
    return total


# -- curated table checks ----------------------------------------------------------

_RANK_LINE = re.compile(r"^\s*(\d*)\s*((?:\\mathbb Z)(?:\s*\\oplus\s*\\mathbb Z)*|0)\s.*?i\s*(=|\\ge)\s*(\d+)")


def parse_rank_quote(quote: str) -> tuple[int, ...]:
    """Ranks from a display such as ``\\mathbb Z i=0 \\\\ 5\\mathbb Z i=1 \\\\ 0 i\\ge 2``."""
    ranks: dict[int, int] = {}
    for line in quote.splitlines():
        m = _RANK_LINE.match(line.replace("\\aligned", ""))
        if m is None:
            continue
        coeff, group, rel, deg = m.groups()
        if group == "0":
            rank = 0
        else:
            rank = (int(coeff) if coeff else 1) * group.count("\\mathbb Z")
        if rel == "=":
            ranks[int(deg)] = rank
    top = max(ranks) if ranks else -1
    return tuple(ranks.get(d, 0) for d in range(top + 1))


def check_ranks(tables: CohenTables) -> list[Check]:
    problems = []
    data = tables.to_dict()["cohomology"]
    for t, entry in sorted(data.items()):
        ranks = tuple(entry["ranks"])
        for deg, labels in entry.get("labels", {}).items():
            if int(deg) >= len(ranks) or len(labels) != ranks[int(deg)]:
                problems.append(f"K_{t}: {len(labels)} labels in degree {deg} against ranks {ranks}")
        if entry.get("quote") and parse_rank_quote(entry["quote"]) != ranks:
            problems.append(f"K_{t}: ranks {ranks} but quote gives {parse_rank_quote(entry['quote'])}")
    return [_result("cohomology ranks match their quotes", problems)]


def check_quotes(tables: CohenTables) -> list[Check]:
    problems = []
    for t, perm in tables.curated_actions():
        for col in tables.action_entry(t, perm)["columns"]:
            quoted = parse_quote_image(col["quote"])
            image = {k: int(v) for k, v in col["image"].items() if int(v)}
            where = f"{perm} on K_{t}, {col['basis']}"
            if "amended" in col:
                literal = {k: int(v) for k, v in col["paper_literal"].items() if int(v)}
                if literal != quoted:
                    problems.append(f"{where}: stored literal {literal} differs from quote {quoted}")
                if {k: abs(v) for k, v in image.items()} != {k: abs(v) for k, v in literal.items()}:
                    problems.append(f"{where}: amendment {image} is not a sign change of {literal}")
            elif image != quoted:
                problems.append(f"{where}: image {image} differs from quote {quoted}")
    return [_result("action columns match their quotes", problems)]


def _integral_power_is_identity(cols: list[list[int]], k: int) -> bool:
    n = len(cols)
    m = [[cols[j][r] for j in range(n)] for r in range(n)]
    acc = [[int(r == c) for c in range(n)] for r in range(n)]
    for _ in range(k):
        acc = [[sum(acc[r][s] * m[s][c] for s in range(n)) for c in range(n)] for r in range(n)]
    return all(acc[r][c] == int(r == c) for r in range(n) for c in range(n))


def matrix_order(cols: list[list[int]], bound: int = 12) -> int | None:
    for k in range(1, bound + 1):
        if _integral_power_is_identity(cols, k):
            return k
    return None


def check_orders(tables: CohenTables) -> list[Check]:
    out = []
    problems = []
    for t, perm in tables.curated_actions():
        q = tables.declared_order(t, perm)
        order = matrix_order(tables.integral_columns(t, perm))
        if order != q:
            problems.append(f"{perm} on K_{t}: declared order {q}, actual {order}")
    out.append(_result("curated matrices have their declared orders", problems))
    for t, perm in tables.curated_actions():
        entry = tables.action_entry(t, perm)
        if not any("paper_literal" in c for c in entry["columns"]):
            continue
        q = tables.declared_order(t, perm)
        literal = tables.integral_columns(t, perm, paper_literal=True)
        if matrix_order(literal) != q:
            fid = f"paper-literal:K{t}{perm}"
            out.append(Check(FLAG, fid, f"printed matrix has order {_order_mod(literal, 3)} over F_3, declared {q}"))
    return out


def _order_mod(cols: list[list[int]], p: int, bound: int = 24) -> int | None:
    sigma = FpMatrix.from_columns(cols, p)
    power = sigma
    for k in range(1, bound + 1):
        if power.is_identity():
            return k
        power = power @ sigma
    return None


def _vector(image: dict, labels: tuple[str, ...]) -> list[int]:
    index = {name: k for k, name in enumerate(labels)}
    v = [0] * len(labels)
    for k, c in image.items():
        v[index[k]] += int(c)
    return v


def check_golden_vectors(tables: CohenTables, results: PaperResults) -> list[Check]:
    problems = []
    for e in results.data.get("linear_algebra", []):
        t, perm, p = e["t"], e["perm"], e["p"]
        where = f"{perm} on H^1(K_{t}, F_{p})"
        labels = tables.basis_labels(t, 1)
        sigma = tables.action_table(t, p, perm)[1]
        q = tables.declared_order(t, perm)
        if "invariants" in e:
            expected = [_vector(v, labels) for v in e["invariants"]]
            inv = invariants([sigma])
            if inv.dim != len(expected) or not inv.same_span(expected):
                problems.append(f"{where}: invariants {inv.basis} do not span the stated vectors")
        if "coinvariants" in e or "norm" in e:
            nm = norm_map(sigma, q)
            reps = tuple(labels[j] for j in nm.source.representatives)
            if "coinvariants" in e and reps != tuple(e["coinvariants"]):
                problems.append(f"{where}: coinvariant representatives {reps}")
            for basis, image in e.get("norm", {}).items():
                got = nm.matrix.column(labels.index(basis))
                want = tuple(x % p for x in _vector(image, labels))
                if got != want:
                    problems.append(f"{where}: N({basis}) = {got}, stated {want}")
            if "norm_isomorphism" in e and nm.is_isomorphism != e["norm_isomorphism"]:
                problems.append(f"{where}: norm isomorphism is {nm.is_isomorphism}")
    return [_result("linear-algebra golden vectors", problems)]


_GEN = re.compile(r"(\d*)B_\{(\d\d)\}B_\{(\d\d)\}")


def _quoted_generators(quote: str) -> list[dict[str, int]]:
    m = re.search(r"(?:<|\\\{)(.*?)(?:>|\\\})", quote)
    if m is None:
        return []
    gens = []
    for part in m.group(1).split(","):
        vec: dict[str, int] = {}
        for coeff, a, b in _GEN.findall(part):
            vec[f"B{a}B{b}"] = vec.get(f"B{a}B{b}", 0) + (int(coeff) if coeff else 1)
        if vec:
            gens.append(vec)
    return gens


def check_degree2(tables: CohenTables) -> list[Check]:
    problems = []
    for e in tables.to_dict().get("degree2", []):
        where = f"{e['perm']} on H^2(K_{e['t']}, F_{e['p']})"
        labels = tables.basis_labels(e["t"], 2)
        p = e["p"]
        first = e["quote"].split("; ")[0]
        quoted = [_vector(v, labels) for v in _quoted_generators(first)]
        stored = [_vector(v, labels) for v in e["invariant_basis"]]
        if len(stored) != e["invariant_dim"]:
            problems.append(f"{where}: {len(stored)} basis vectors for dimension {e['invariant_dim']}")
        if quoted != stored:
            problems.append(f"{where}: stored invariant basis differs from the quote")
        fields = set(re.findall(r"F_(\d+)", e["quote"]))
        if fields != {str(p)}:
            problems.append(f"{where}: quote is over F_{'/F_'.join(sorted(fields))}")
        if Subspace.span(stored, p, len(labels)).dim != len(stored):
            problems.append(f"{where}: stored invariant basis is not independent")
        if "coinvariant_dim" in e:
            bars = e["quote"].count("\\bar")
            if e["coinvariant_dim"] != bars:
                problems.append(f"{where}: coinvariant_dim {e['coinvariant_dim']}, quote lists {bars}")
            # Herbrand quotient: dim H^0 - dim H_0 = dim coker N - dim ker N
            if e["invariant_dim"] - e["coinvariant_dim"] != e["tate_even"] - e["tate_odd"]:
                problems.append(f"{where}: dimensions violate the Herbrand identity")
            if "isomorphism" in e["quote"] and (e["tate_even"], e["tate_odd"]) != (0, 0):
                problems.append(f"{where}: norm is stated to be an isomorphism")
    return [_result("degree-2 curated answers are consistent", problems)]


def check_herbrand(tables: CohenTables) -> list[Check]:
    problems = []
    for t, perm in tables.curated_actions():
        q = tables.declared_order(t, perm)
        for p in (2, 3, 5, 7):
            sigma = tables.action_table(t, p, perm)[1]
            if not (sigma ** q).is_identity():
                continue
            nm = norm_map(sigma, q)
            if nm.target.dim - nm.source.dim != nm.cokernel_dim - nm.kernel_dim or nm.target.dim != nm.source.dim:
                problems.append(f"{perm} on K_{t} at p={p}")
    return [_result("norm-map dimension identities", problems)]


# -- enumeration oracles ------------------------------------------------------


def check_oracles() -> list[Check]:
    out = []
    problems = [
        f"g={g}, p={p}"
        for g in range(1, 11)
        for p in primes_upto(13)
        if set(solve_rh(g, p)) != brute_rh(g, p)
    ]
    out.append(_result("Riemann-Hurwitz solutions match brute force (g<=10, p<=13)", problems))
    problems = []
    for g, i, p in itertools.product(range(1, 4), range(1, 10), (2, 3, 5, 7)):
        got = len(enumerate_classes(g, i, p))
        want = brute_class_count(g, i, p)
        if got != want:
            problems.append(f"({g},{i},{p}): {got} classes, brute force {want}")
    out.append(_result("class counts match orbit counting (g<=3, i<=9, p<=7)", problems))
    problems = []
    for g, i, p in itertools.product(range(1, 4), range(1, 6), (3, 5, 7)):
        for d, _ in enumerate_classes(g, i, p):
            if power_data(d, 1) != d or not is_central(d):
                problems.append(str(d))
            for a, b in itertools.product(range(1, p), repeat=2):
                if power_data(power_data(d, a), b) != power_data(d, a * b):
                    problems.append(f"{d} with m={a},{b}")
    out.append(_result("power_data is a (Z/p)^x action with trivial stabilisers", problems))
    return out


# -- golden tables -------------------------------------------------------------


def _cell(text: str) -> set[RHSolution]:
    if text.strip() == "No":
        return set()
    return {RHSolution(int(h), int(t)) for h, t in re.findall(r"\((\d+),(\d+)\)", text)}


def check_tables(results: PaperResults) -> list[Check]:
    out = []
    table = remark_table()
    rt = results.data["remark_table"]
    problems, cells = [], 0
    for row in rt["rows"]:
        for p, text in zip(rt["primes"], row["cells"]):
            cells += 1
            for g, i in row["groups"]:
                if set(table[(g, i), p]) != _cell(text):
                    problems.append(f"Gamma_{g}^{i}, p={p}")
    out.append(_result("admissible (h,t) table", problems, f"{cells} cells"))
    problems = []
    for e in results.data["torsion_corollaries"]:
        punctures = e.get("i") or range(e["i_min"], e["i_min"] + 5)
        for i in punctures:
            if torsion_primes(e["g"], i) != tuple(e["primes"]):
                problems.append(f"Gamma_{e['g']}^{i}: {torsion_primes(e['g'], i)}")
    for e in results.data["prime_bounds"]:
        # a necessary condition: every prime that occurs must be listed
        seen = sorted({p for i in range(1, 20) for p in torsion_primes(e["g"], i)})
        if not set(seen) <= set(e["primes"]):
            problems.append(f"genus {e['g']}: primes {seen}")
    out.append(_result("torsion primes and vanishing thresholds", problems))
    return out


def golden_inputs(results: PaperResults) -> list[tuple[int, int, int]]:
    keys = {(e["g"], e["i"], e["p"]) for e in results.data["totals"]}
    for p in (5, 7, 11):
        keys.update((p, i, p) for i in range(1, 5))
    for v in results.data["vanishing"]:
        for i in range(v["i_min"], v["i_min"] + 3):
            keys.update((v["g"], i, p) for p in primes_upto(2 * v["g"] + 1) if p > 2)
    for g in (1, 2, 3):
        for i in range(1, 11):
            keys.update((g, i, p) for p in primes_upto(2 * g + 1) if p > 2 or g == 1)
    return sorted(keys)


def check_farrell(tables: CohenTables, results: PaperResults) -> list[Check]:
    out = []
    problems, matched, unsupported = [], 0, []
    for g, i, p in golden_inputs(results):
        try:
            rep = farrell(g, i, p, tables)
        except FarrellError as exc:
            if results.total(g, i, p) is not None:
                problems.append(f"({g},{i},{p}): {exc}")
            else:
                unsupported.append((g, i, p))
            continue
        total = rep.engine_total
        for c in rep.classes:
            if c.normalizer.even.order * c.normalizer.odd.order == 1:
                problems.append(f"({g},{i},{p}): class {c.data} contributes nothing")
        if total.even.order != _prod(c.normalizer.even.order for c in rep.classes):
            problems.append(f"({g},{i},{p}): even total is not additive over classes")
        if rep.discrepancy:
            out.append(
                Check(FLAG, f"discrepancy:{g},{i},{p}", f"engine {total}; stated {rep.paper_total}")
            )
        elif rep.paper_total is not None:
            matched += 1
        ref = results.reference(g, i, p)
        if ref is not None and ref[0] != total:
            problems.append(f"({g},{i},{p}): {total} against reference {ref[0]}")
    out.append(_result("Farrell totals match stated values", problems, f"{matched} inputs"))
    return out


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def r2_note(tables: CohenTables) -> Check:
    dims = tables.quotient_cohomology(4, 3, SymPart((2, 1, 1)))
    split = split_product(dims, 3)
    return Check(
        NOTE,
        "R2",
        f"split product over quotient dims {dims} gives {split}; the stated value 2Z/3 / Z/3 is used",
    )


def run_checks(tables: CohenTables | None = None, paper_literal: bool = False) -> list[Check]:
    results = paper_results()
    if tables is None:
        tables = CohenTables.load()
    if paper_literal:
        tables = _literal_tables(tables)
    suites = [
        lambda: check_ranks(tables),
        lambda: check_quotes(tables),
        lambda: check_orders(tables),
        lambda: check_degree2(tables),
        lambda: check_herbrand(tables),
        lambda: check_golden_vectors(tables, results),
        check_oracles,
        lambda: check_tables(results),
        lambda: check_farrell(tables, results),
        lambda: [r2_note(tables)],
    ]
    names = [
        "cohomology ranks", "action quotes", "matrix orders", "degree-2 answers",
        "norm identities", "golden vectors", "oracles", "golden tables", "Farrell totals", "R2",
    ]
    out = []
    for name, suite in zip(names, suites):
        try:
            out.extend(suite())
        except (FarrellError, KeyError, ValueError, TypeError, IndexError) as exc:
            out.append(Check(FAIL, name, f"{type(exc).__name__}: {exc}"))
    flags = known_flags()
    return [
        Check(FAIL, c.name, f"undocumented flag: {c.detail}") if c.status == FLAG and c.name not in flags else c
        for c in out
    ]


def _literal_tables(tables: CohenTables) -> CohenTables:
    data = tables.to_dict()
    for entry in data["actions"]:
        for col in entry["columns"]:
            if "paper_literal" in col:
                col["image"] = col["paper_literal"]
                del col["amended"]
    return CohenTables(data)


def exit_code(checks: list[Check]) -> int:
    return 3 if any(c.status == FAIL for c in checks) else 0
