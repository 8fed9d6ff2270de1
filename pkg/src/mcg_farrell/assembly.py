"""p-primary Farrell cohomology of Gamma_g^i from its order-p subgroups.

Gamma_g^i is periodic of period 2, so the p-primary part of its Farrell
cohomology is the product, over conjugacy classes of subgroups Z/p, of the
normaliser cohomologies. Every normaliser sits in a central extension

    1 -> Z/p -> N(Z/p) -> N(Z/p)/(Z/p) -> 1

and each class is handled by exactly one of the rules below. Extension
problems that cannot be decided (Z/p + Z/p versus Z/p^2) are kept as explicit
alternatives.

====  ==========================================  =========================
rule  pattern                                     source of the value
====  ==========================================  =========================
R1    h=0, t in {4,5}, trivial Sigma, p odd       split product over K_t
R2    h=0, t=4, Sigma_2, p=3                      stated value (ledger)
R3    h=0, t=5, Sigma_2, p=3                      split product over H*(K_5)^Sigma_2
R4    h=0, t=5, Sigma_3 or Sigma_4, p=3           stable elements, stated value
R5    h=0, t=3, p prime to |Sigma|                split product, K_3 trivial
R6    h=1, t=2                                    quotient has H^{>0} = 0
R7    genus 1, p=2                                split product / Z/4 detection
====  ==========================================  =========================
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .cohen import CohenTables, GradedDims, default_tables
from .errors import DomainError, UnsupportedCase
from .fpdata import FixedPointData, SymPart, enumerate_classes, is_central, sym_part
from .rh import RHSolution, has_cyclic_p2, is_prime


@dataclass(frozen=True)
class PGroup:
    """Finite abelian p-group: exponent e stands for one summand Z/p^e."""

    p: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        if any(e < 1 for e in self.exponents):
            raise DomainError(f"exponents must be positive: {self.exponents}")
        object.__setattr__(self, "exponents", tuple(sorted(self.exponents)))

    @classmethod
    def parse(cls, text: str, p: int) -> PGroup:
        """Read ``"5Z/3+Z/9"``, ``"3Z/3 ⊕ 2Z/9"``, ``"Z/p"`` or ``"0"``."""
        text = text.strip()
        if text == "0":
            return cls(p)
        exps: list[int] = []
        for term in re.split(r"\s*(?:\+|⊕)\s*", text):
            m = re.fullmatch(r"(\d*)Z/(\d+|p)(?:\^(\d+))?", term.replace(" ", ""))
            if m is None:
                raise DomainError(f"cannot parse group term {term!r}")
            count = int(m.group(1) or 1)
            if m.group(2) == "p":
                e = int(m.group(3) or 1)
            else:
                q, e = int(m.group(2)), 0
                while q % p == 0:
                    q //= p
                    e += 1
                if q != 1 or e == 0:
                    raise DomainError(f"Z/{m.group(2)} is not a {p}-group")
            exps.extend([e] * count)
        return cls(p, tuple(exps))

    @property
    def order(self) -> int:
        return self.p ** sum(self.exponents)

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    def __add__(self, other: PGroup) -> PGroup:
        if self.p != other.p:
            raise DomainError("cannot add groups for different primes")
        return PGroup(self.p, self.exponents + other.exponents)

    def __str__(self):
        if not self.exponents:
            return "0"
        parts = []
        for e, n in sorted(Counter(self.exponents).items()):
            name = f"Z/{self.p ** e}"
            parts.append(name if n == 1 else f"{n}{name}")
        return " ⊕ ".join(parts)


def _alt_key(g: PGroup):
    return (sum(1 for e in g.exponents if e > 1), g.exponents)


@dataclass(frozen=True)
class AltSet:
    """The possible answers to an unresolved extension problem."""

    alternatives: tuple[PGroup, ...]

    def __post_init__(self):
        alts = tuple(sorted(set(self.alternatives), key=_alt_key))
        if not alts:
            raise DomainError("an AltSet needs at least one alternative")
        if len({g.p for g in alts}) > 1:
            raise DomainError("alternatives for different primes")
        if len({g.order for g in alts}) > 1:
            raise DomainError(f"alternatives of different orders: {[str(g) for g in alts]}")
        object.__setattr__(self, "alternatives", alts)

    @classmethod
    def single(cls, g: PGroup) -> AltSet:
        return cls((g,))

    @classmethod
    def zero(cls, p: int) -> AltSet:
        return cls((PGroup(p),))

    @classmethod
    def parse(cls, texts, p: int) -> AltSet:
        return cls(tuple(PGroup.parse(s, p) for s in texts))

    @property
    def p(self) -> int:
        return self.alternatives[0].p

    @property
    def order(self) -> int:
        return self.alternatives[0].order

    @property
    def is_zero(self) -> bool:
        return self.alternatives == (PGroup(self.p),)

    def __add__(self, other: AltSet) -> AltSet:
        # classes are independent: every pairing of alternatives is possible
        return AltSet(tuple(a + b for a, b in itertools.product(self.alternatives, other.alternatives)))

    def __str__(self):
        return " or ".join(str(g) for g in self.alternatives)

    def to_json(self) -> list[list[int]]:
        return [list(g.exponents) for g in self.alternatives]

    @classmethod
    def from_json(cls, data, p: int) -> AltSet:
        return cls(tuple(PGroup(p, tuple(exps)) for exps in data))


@dataclass(frozen=True)
class PeriodicCohomology:
    """Farrell cohomology of period 2: one AltSet per parity."""

    even: AltSet
    odd: AltSet

    @classmethod
    def zero(cls, p: int) -> PeriodicCohomology:
        return cls(AltSet.zero(p), AltSet.zero(p))

    @classmethod
    def parse(cls, even, odd, p: int) -> PeriodicCohomology:
        return cls(AltSet.parse(even, p), AltSet.parse(odd, p))

    @property
    def p(self) -> int:
        return self.even.p

    def degree(self, n: int) -> AltSet:
        return self.even if n % 2 == 0 else self.odd

    @property
    def is_zero(self) -> bool:
        return self.even.is_zero and self.odd.is_zero

    def __add__(self, other: PeriodicCohomology) -> PeriodicCohomology:
        return PeriodicCohomology(self.even + other.even, self.odd + other.odd)

    def __str__(self):
        return f"even: {self.even}; odd: {self.odd}"


RULE_DESCRIPTIONS = {
    "R1": "h=0, t in {4,5}, trivial Sigma-part: split product with H*(K_t)",
    "R2": "h=0, t=4, Sigma_2, p=3: stated value via the Kunneth step",
    "R3": "h=0, t=5, Sigma_2, p=3: split product with H*(K_5)^Sigma_2",
    "R4": "h=0, t=5, Sigma_3 or Sigma_4, p=3: stable elements",
    "R5": "h=0, t=3, p prime to |Sigma|: split product, K_3 trivial",
    "R6": "h=1, t=2: N/(Z/p) has no positive-degree cohomology",
    "R7": "genus 1, p=2",
}

# quotient cohomology for h=1, t=2: H^0 = F_p, H^i = 0 for i > 0
_GENUS1_QUOTIENT = GradedDims((1,))


def _ledger(p: int, even: str, odd: str) -> PeriodicCohomology:
    return PeriodicCohomology.parse([even], [odd], p)


def split_product(dims: GradedDims, p: int) -> PeriodicCohomology:
    """Z/p x Q for a quotient Q whose integral cohomology is free with the
    given ranks. Degree-2 classes of Q can merge with the periodicity class
    into a Z/p^2, which is left open as a second alternative."""
    if not dims.is_finite:
        raise UnsupportedCase(f"quotient cohomology {dims} is not finite")
    top = len(dims.head)
    even = sum(dims[d] for d in range(0, top, 2))
    odd = sum(dims[d] for d in range(1, top, 2))
    alts = [PGroup(p, (1,) * even)]
    if dims[2] > 0:
        alts.append(PGroup(p, (1,) * (even - 2) + (2,)))
    return PeriodicCohomology(AltSet(tuple(alts)), AltSet.single(PGroup(p, (1,) * odd)))


@dataclass(frozen=True)
class ClassReport:
    data: FixedPointData
    solution: RHSolution
    sym: SymPart
    rule: str
    normalizer: PeriodicCohomology

    def to_dict(self) -> dict:
        return {
            "data": self.data.to_dict(),
            "h": self.solution.h,
            "t": self.solution.t,
            "sym": list(self.sym.multiplicities),
            "rule": self.rule,
            "even": self.normalizer.even.to_json(),
            "odd": self.normalizer.odd.to_json(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ClassReport:
        data = FixedPointData.from_dict(d["data"])
        return cls(
            data,
            RHSolution(d["h"], d["t"]),
            SymPart(tuple(d["sym"])),
            d["rule"],
            PeriodicCohomology(
                AltSet.from_json(d["even"], data.p), AltSet.from_json(d["odd"], data.p)
            ),
        )


def select_rule(c: FixedPointData, s: RHSolution) -> str:
    """Name of the rule covering the class, or raise UnsupportedCase."""
    p = c.p
    g = s.genus(p)
    sym = sym_part(c)
    where = f"class {c} with (h,t)={s} at p={p}"
    if p == 2 and g >= 2:
        raise UnsupportedCase(f"{where}: the 2-primary part for genus >= 2 is not computed")
    if len(sym.repeated) > 1:
        raise UnsupportedCase(f"{where}: Sigma-part {sym} has two repeated-value factors")
    if s.h >= 2 or s.t >= 6:
        raise UnsupportedCase(f"{where}: no rule for h={s.h}, t={s.t}")
    if s.h == 1:
        if s.t == 2:
            return "R6"
        raise UnsupportedCase(f"{where}: no rule for h=1, t={s.t}")
    if p == 2:
        if g == 1 and s.t == 4 and sym.order in (1, 2):
            return "R7"
        raise UnsupportedCase(f"{where}: no genus-1 rule for Sigma-part {sym}")
    if s.t == 3 and sym.order % p:
        return "R5"
    if s.t in (4, 5) and sym.is_trivial:
        return "R1"
    if p == 3 and sym.repeated == (2,) and s.t == 4:
        return "R2"
    if p == 3 and sym.repeated == (2,) and s.t == 5:
        return "R3"
    if p == 3 and s.t == 5 and sym.repeated in ((3,), (4,)):
        return "R4"
    raise UnsupportedCase(f"{where}: no rule for Sigma-part {sym}")


def normalizer_cohomology(
    c: FixedPointData, s: RHSolution, tables: CohenTables | None = None
) -> ClassReport:
    """Ĥ*(N(Z/p), Z)_(p) for the subgroup with fixed point data ``c``."""
    tables = tables or default_tables()
    if not is_central(c):
        raise UnsupportedCase(f"class {c}: normaliser is not the centraliser")
    p = c.p
    sym = sym_part(c)
    rule = select_rule(c, s)
    if rule in ("R1", "R3", "R5"):
        value = split_product(tables.quotient_cohomology(s.t, p, sym), p)
    elif rule == "R2":
        value = _ledger(p, "2Z/3", "Z/3")
    elif rule == "R4":
        value = _ledger(p, "Z/3+Z/9", "Z/3")
    elif rule == "R6":
        value = split_product(_GENUS1_QUOTIENT, p)
    else:  # R7
        if sym.is_trivial:
            value = split_product(tables.quotient_cohomology(s.t, p, sym), p)
        elif has_cyclic_p2(s.genus(p), c.i, p):
            # a Z/4 inside N(Z/2) and no Z/2 x Z/2 force the Z/4 reading
            value = _ledger(p, "Z/4", "Z/2")
        else:
            raise UnsupportedCase(f"class {c}: Sigma_2 without a cyclic Z/4 overgroup")
    return ClassReport(c, s, sym, rule, value)


@dataclass(frozen=True)
class FarrellReport:
    g: int
    i: int
    p: int
    classes: tuple[ClassReport, ...]
    engine_total: PeriodicCohomology
    paper_total: PeriodicCohomology | None = None
    paper_quote: str | None = None

    @property
    def discrepancy(self) -> bool:
        return self.paper_total is not None and self.paper_total != self.engine_total

    def to_dict(self) -> dict:
        out = {
            "g": self.g,
            "i": self.i,
            "p": self.p,
            "classes": [c.to_dict() for c in self.classes],
            "even": self.engine_total.even.to_json(),
            "odd": self.engine_total.odd.to_json(),
        }
        if self.paper_total is not None:
            out["paper"] = {
                "even": self.paper_total.even.to_json(),
                "odd": self.paper_total.odd.to_json(),
                "quote": self.paper_quote,
            }
        out["discrepancy"] = self.discrepancy
        return out

    @classmethod
    def from_dict(cls, d: dict) -> FarrellReport:
        p = d["p"]
        paper = d.get("paper")
        return cls(
            d["g"],
            d["i"],
            p,
            tuple(ClassReport.from_dict(c) for c in d["classes"]),
            PeriodicCohomology(AltSet.from_json(d["even"], p), AltSet.from_json(d["odd"], p)),
            None
            if paper is None
            else PeriodicCohomology(AltSet.from_json(paper["even"], p), AltSet.from_json(paper["odd"], p)),
            None if paper is None else paper.get("quote"),
        )


class PaperResults:
    """Golden values transcribed from the source text."""

    def __init__(self, data: dict):
        self.data = data
        self._totals = {(e["g"], e["i"], e["p"]): e for e in data["totals"]}

    @classmethod
    def load(cls) -> PaperResults:
        text = resources.files("mcg_farrell").joinpath("data/paper_results.json").read_text()
        return cls(json.loads(text))

    def stated_primes(self, g: int, i: int) -> tuple[tuple[int, ...], str] | None:
        for e in self.data["torsion_corollaries"]:
            if e["g"] != g:
                continue
            if i in e.get("i", ()) or ("i_min" in e and i >= e["i_min"]):
                return tuple(e["primes"]), e["quote"]
        return None

    def total(self, g: int, i: int, p: int) -> tuple[PeriodicCohomology, str] | None:
        """Stated Ĥ*(Gamma_g^i)_(p), or None if the text gives no value."""
        e = self._totals.get((g, i, p))
        if e is not None:
            return PeriodicCohomology.parse(e["even"], e["odd"], p), e["quote"]
        gp = self.data["genus_p"]
        if g == p and p >= gp["p_min"]:
            for row in gp["rows"]:
                if row["i"] == i:
                    return PeriodicCohomology.parse(row["even"], row["odd"], p), row["quote"]
            if i >= gp["vanishing"]["i_min"]:
                return PeriodicCohomology.zero(p), gp["vanishing"]["quote"]
        for v in self.data["vanishing"]:
            if v["g"] == g and i >= v["i_min"]:
                return PeriodicCohomology.zero(p), v["quote"]
        stated = self.stated_primes(g, i)
        if stated is not None and p not in stated[0]:
            return PeriodicCohomology.zero(p), stated[1]
        return None

    def reference(self, g: int, i: int, p: int) -> tuple[PeriodicCohomology, dict] | None:
        for e in self.data.get("reference", []):
            if (e["g"], e["i"]) == (g, i) and str(p) in e["by_prime"]:
                row = e["by_prime"][str(p)]
                return PeriodicCohomology.parse(row["even"], row["odd"], p), e
        return None


@lru_cache(maxsize=1)
def paper_results() -> PaperResults:
    return PaperResults.load()


def farrell(g: int, i: int, p: int, tables: CohenTables | None = None) -> FarrellReport:
    """Ĥ*(Gamma_g^i, Z)_(p) as the sum of normaliser cohomologies over classes."""
    if g < 1 or i < 1:
        raise DomainError(f"need g >= 1 and i >= 1, got g={g}, i={i}")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    reports = []
    total = PeriodicCohomology.zero(p)
    for data, sol in enumerate_classes(g, i, p):
        rep = normalizer_cohomology(data, sol, tables)
        reports.append(rep)
        total = total + rep.normalizer
    stated = paper_results().total(g, i, p)
    paper, quote = stated if stated is not None else (None, None)
    return FarrellReport(g, i, p, tuple(reports), total, paper, quote)
