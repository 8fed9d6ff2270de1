"""Cohomology of K_t = Gamma_0^t for t <= 5 and of the quotient N(Z/p)/(Z/p).

The integral cohomology of K_t is free, so mod-p dimensions are its ranks.
Symmetric-group actions in degree 1 are curated matrices (see
``data/cohen_actions.json``); degree-2 actions on K_5 are only available as
curated invariant and Tate dimensions.

For 1 -> K_t -> N(Z/p)/(Z/p) -> Sigma -> 1 the Serre spectral sequence
collapses, giving:

* |Sigma| prime to p: H^d(Q) = H^d(K_t)^Sigma;
* Sigma = Sigma_2 = <x> with p = 2: H^n(Q) = sum over a + b = n of
  H^a(<x>, H^b(K_t)).
"""

from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DomainError, UnsupportedAction, UnsupportedCase
from .fpdata import SymPart
from .fplinalg import FpMatrix, invariants, tate_cyclic

# Transposition generating Sigma_2 when the last two fixed points are swapped.
SIGMA2_GENERATOR = {4: "(34)", 5: "(45)"}


@dataclass(frozen=True)
class GradedDims:
    """Dimensions d_0, d_1, ... given by a finite head followed by a repeating tail."""

    head: tuple[int, ...]
    tail: tuple[int, ...] = (0,)

    def __post_init__(self):
        head, tail = list(self.head), tuple(self.tail)
        if not tail:
            raise ValueError("tail must be non-empty")
        if len(set(tail)) == 1:
            tail = tail[:1]
        while len(tail) == 1 and len(head) > 1 and head[-1] == tail[0]:
            head.pop()
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "tail", tail)

    def __getitem__(self, d: int) -> int:
        if d < 0:
            raise IndexError(d)
        if d < len(self.head):
            return self.head[d]
        return self.tail[(d - len(self.head)) % len(self.tail)]

    @property
    def is_finite(self) -> bool:
        return all(x == 0 for x in self.tail)

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self[d] for d in range(n))

    def __str__(self):
        shown = ",".join(map(str, self.head + self.tail))
        return f"({shown},…)"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*B_\{(\d)(\d)\}")


def parse_quote_image(quote: str) -> dict[str, int]:
    """Coefficients of the right-hand side of a quoted action, e.g.
    ``"(34)B_{43}=B_{42}+B_{43}"`` -> ``{"B42": 1, "B43": 1}``."""
    rhs = quote.rsplit("=", 1)[1]
    out: dict[str, int] = {}
    for sign, coeff, a, b in _TERM.findall(rhs):
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        key = f"B{a}{b}"
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


class CohenTables:
    """Curated cohomology data; immutable after construction."""

    def __init__(self, data: dict):
        self._data = copy.deepcopy(data)
        if not self._data.get("cohomology") or not self._data.get("actions"):
            raise DomainError("curated table is empty or missing required sections")
        self._actions = {(a["t"], a["perm"]): a for a in self._data["actions"]}
        self._degree2 = {(e["t"], e["perm"], e["p"]): e for e in self._data.get("degree2", [])}

    @classmethod
    def load(cls, path: str | Path | None = None) -> CohenTables:
        if path is None:
            text = resources.files("mcg_farrell").joinpath("data/cohen_actions.json").read_text()
        else:
            text = Path(path).read_text()
        return cls(json.loads(text))

    def to_dict(self) -> dict:
        return copy.deepcopy(self._data)

    # -- raw data ---------------------------------------------------------

    def ranks(self, t: int) -> tuple[int, ...]:
        try:
            return tuple(self._data["cohomology"][str(t)]["ranks"])
        except KeyError:
            raise UnsupportedCase(f"H*(K_{t}) is not curated") from None

    def basis_labels(self, t: int, degree: int) -> tuple[str, ...]:
        if degree == 0:
            return ("1",)
        labels = self._data["cohomology"].get(str(t), {}).get("labels", {})
        return tuple(labels.get(str(degree), ()))

    def curated_actions(self) -> list[tuple[int, str]]:
        return sorted(self._actions)

    def action_entry(self, t: int, perm: str) -> dict:
        try:
            return self._actions[(t, perm)]
        except KeyError:
            raise UnsupportedAction(f"action of {perm} on H*(K_{t}) is not curated") from None

    def integral_columns(self, t: int, perm: str, paper_literal: bool = False) -> list[list[int]]:
        entry = self.action_entry(t, perm)
        labels = self.basis_labels(t, entry["degree"])
        index = {name: k for k, name in enumerate(labels)}
        by_basis = {c["basis"]: c for c in entry["columns"]}
        cols = []
        for name in labels:
            col = by_basis.get(name)
            if col is None:
                raise DomainError(f"{perm} on K_{t}: no column for {name}")
            image = col.get("paper_literal", col["image"]) if paper_literal else col["image"]
            vec = [0] * len(labels)
            for k, c in image.items():
                if k not in index:
                    raise DomainError(f"{perm} on K_{t}: unknown basis label {k}")
                vec[index[k]] += int(c)
            cols.append(vec)
        return cols

    def declared_order(self, t: int, perm: str) -> int:
        return int(self.action_entry(t, perm)["order"])

    def action_table(self, t: int, p: int, perm: str, paper_literal: bool = False) -> dict[int, FpMatrix]:
        """Degree -> action matrix mod p. Only degree 1 is stored as a matrix."""
        entry = self.action_entry(t, perm)
        cols = self.integral_columns(t, perm, paper_literal)
        return {entry["degree"]: FpMatrix.from_columns(cols, p)}

    def degree2_answer(self, t: int, perm: str, p: int) -> dict:
        try:
            return self._degree2[(t, perm, p)]
        except KeyError:
            raise UnsupportedAction(
                f"degree-2 action of {perm} on H^2(K_{t}, F_{p}) is not curated"
            ) from None

    # -- quotient cohomology ---------------------------------------------

    def invariant_dim(self, t: int, p: int, perm: str, degree: int) -> int:
        ranks = self.ranks(t)
        if degree >= len(ranks) or ranks[degree] == 0:
            return 0
        if degree == 0:
            return 1
        if degree == 1:
            sigma = self.action_table(t, p, perm)[1]
            return invariants([sigma]).dim
        return int(self.degree2_answer(t, perm, p)["invariant_dim"])

    def quotient_cohomology(self, t: int, p: int, sym: SymPart) -> GradedDims:
        """Dimensions of H^d(N(Z/p)/(Z/p), F_p) for a Sigma-part ``sym``."""
        ranks = self.ranks(t)
        if sym.is_trivial:
            return GradedDims(ranks)
        if t == 3:
            # K_3 is trivial, so Q is the finite group sym itself
            if sym.order % p == 0:
                raise UnsupportedCase(f"Sigma-part {sym} of order divisible by p={p} over K_3")
            return GradedDims((1,))
        if len(sym.repeated) > 1:
            raise UnsupportedCase(f"Sigma-part {sym} has more than one non-trivial factor")
        if sym.order % p == 0 and sym.order > p:
            raise UnsupportedCase(
                f"p={p} divides |{sym}| = {sym.order}; handled by the stable-element rule"
            )
        if sym.repeated != (2,) or t not in SIGMA2_GENERATOR:
            raise UnsupportedCase(f"no curated generators for {sym} on K_{t}")
        perm = SIGMA2_GENERATOR[t]
        if sym.order % p:
            return GradedDims(tuple(self.invariant_dim(t, p, perm, d) for d in range(len(ranks))))
        return self._cyclic_collapse(t, p, perm)

    def _cyclic_collapse(self, t: int, p: int, perm: str) -> GradedDims:
        """Total dimensions of E_2 = H^a(<x>, H^b(K_t, F_p)) for <x> of order p."""
        ranks = self.ranks(t)
        if len(ranks) > 2:
            raise UnsupportedCase(f"cyclic collapse needs matrices above degree 1 for K_{t}")
        q = self.declared_order(t, perm)
        columns = {0: None}
        if len(ranks) > 1 and ranks[1]:
            columns[1] = tate_cyclic(self.action_table(t, p, perm)[1], q)

        def e2(a: int, b: int) -> int:
            if b == 0:
                return 1
            return columns[b].dim(a) if b in columns else 0

        top = len(ranks)
        head = tuple(sum(e2(n - b, b) for b in range(min(n, top - 1) + 1)) for n in range(top + 2))
        tail = tuple(sum(e2(n - b, b) for b in range(top)) for n in (top + 2, top + 3))
        if tail[0] == tail[1]:
            tail = tail[:1]
        return GradedDims(head, tail)


@lru_cache(maxsize=1)
def default_tables() -> CohenTables:
    return CohenTables.load()


def action_table(t: int, p: int, perm: str) -> dict[int, FpMatrix]:
    return default_tables().action_table(t, p, perm)


def quotient_cohomology(t: int, p: int, sym: SymPart) -> GradedDims:
    return default_tables().quotient_cohomology(t, p, sym)


def basis_labels(t: int, degree: int) -> tuple[str, ...]:
    return default_tables().basis_labels(t, degree)
