"""Fixed point data of order-p elements of Gamma_g^i.

An element of order p fixing t points of S_g is recorded as
``(b_1, ..., b_i | b_{i+1}, ..., b_t)``: the first i rotation exponents sit at
the marked points and are ordered, the remaining t - i are an unordered
multiset. Two order-p elements are conjugate iff their data agree, and every
subgroup has a generator with b_1 = 1, so canonical data (leading entry 1)
index the conjugacy classes of subgroups of order p.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import DomainError
from .rh import RHSolution, admissible_solutions, is_prime


@dataclass(frozen=True)
class FixedPointData:
    p: int
    ordered: tuple[int, ...]
    suffix: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        object.__setattr__(self, "ordered", tuple(int(b) for b in self.ordered))
        object.__setattr__(self, "suffix", tuple(sorted(int(b) for b in self.suffix)))
        for b in self.ordered + self.suffix:
            if not 0 < b < self.p:
                raise DomainError(f"rotation exponent {b} not in [1, {self.p - 1}]")
        if sum(self.ordered + self.suffix) % self.p:
            raise DomainError(f"{self} does not sum to 0 mod {self.p}")

    @property
    def i(self) -> int:
        return len(self.ordered)

    @property
    def t(self) -> int:
        return len(self.ordered) + len(self.suffix)

    def __str__(self):
        left = ",".join(map(str, self.ordered))
        right = ",".join(map(str, self.suffix))
        return f"({left}|{right})"

    def to_dict(self) -> dict:
        return {"p": self.p, "ordered": list(self.ordered), "suffix": list(self.suffix)}

    @classmethod
    def from_dict(cls, d: dict) -> FixedPointData:
        return cls(d["p"], tuple(d["ordered"]), tuple(d["suffix"]))

    @classmethod
    def parse(cls, text: str, p: int) -> FixedPointData:
        """Read the textual form ``"(1,2|1,1,1)"``."""
        m = re.fullmatch(r"\s*\(([\d,\s]*)\|([\d,\s]*)\)\s*", text)
        if m is None:
            raise DomainError(f"cannot parse fixed point data {text!r}")

        def ints(s):
            return tuple(int(x) for x in s.split(",") if x.strip())

        return cls(p, ints(m.group(1)), ints(m.group(2)))


@dataclass(frozen=True)
class SymPart:
    """Product of symmetric groups permuting equal suffix exponents."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "multiplicities", tuple(sorted(self.multiplicities, reverse=True))
        )

    @property
    def repeated(self) -> tuple[int, ...]:
        """Multiplicities >= 2, i.e. the non-trivial factors Sigma_m."""
        return tuple(m for m in self.multiplicities if m >= 2)

    @property
    def l(self) -> int:  # noqa: E743
        """Number of suffix points genuinely permuted."""
        return sum(self.repeated)

    @property
    def order(self) -> int:
        return math.prod(math.factorial(m) for m in self.multiplicities)

    @property
    def is_trivial(self) -> bool:
        return not self.repeated

    def __str__(self):
        if self.is_trivial:
            return "Σ_1"
        return " × ".join(f"Σ_{m}" for m in self.repeated)


def _inverse(m: int, p: int) -> int:
    if m % p == 0:
        raise DomainError(f"{m} is not invertible mod {p}")
    return pow(m, -1, p)


def power_data(d: FixedPointData, m: int) -> FixedPointData:
    """Fixed point data of alpha^m given that of alpha.

    If f^b rotates by e^{2 pi i/p} at a point, then (f^m)^c does when mc = b,
    so every exponent is multiplied by m^{-1} mod p.
    """
    inv = _inverse(m, d.p)
    return FixedPointData(
        d.p,
        tuple(b * inv % d.p for b in d.ordered),
        tuple(b * inv % d.p for b in d.suffix),
    )


def canonicalize(d: FixedPointData) -> FixedPointData:
    """The data of the unique generator of <alpha> with leading exponent 1."""
    if not d.ordered:
        raise DomainError("canonical form needs at least one marked point")
    return power_data(d, d.ordered[0])


def is_conjugate(d1: FixedPointData, d2: FixedPointData) -> bool:
    if (d1.p, d1.i, d1.t) != (d2.p, d2.i, d2.t):
        raise DomainError(f"cannot compare {d1} (p={d1.p}) with {d2} (p={d2.p})")
    return d1.ordered == d2.ordered and d1.suffix == d2.suffix


def is_central(d: FixedPointData) -> bool:
    """True when no proper power of alpha is conjugate to alpha.

    Then the normaliser of <alpha> acts trivially on it, so N(Z/p) = C(Z/p).
    """
    return all(not is_conjugate(power_data(d, m), d) for m in range(2, d.p))


def sym_part(d: FixedPointData) -> SymPart:
    return SymPart(tuple(Counter(d.suffix).values()))


def classes_for_solution(i: int, p: int, sol: RHSolution) -> list[FixedPointData]:
    """Canonical data with i marked points and ``sol.t`` fixed points, in
    lexicographic order."""
    if sol.t < i:
        return []
    out = []
    residues = range(1, p)
    for tail in itertools.product(residues, repeat=i - 1):
        head = (1,) + tail
        for suffix in itertools.combinations_with_replacement(residues, sol.t - i):
            if (sum(head) + sum(suffix)) % p == 0:
                out.append(FixedPointData(p, head, suffix))
    return out


def enumerate_classes(g: int, i: int, p: int) -> list[tuple[FixedPointData, RHSolution]]:
    """One canonical FixedPointData per conjugacy class of order-p subgroups of
    Gamma_g^i, paired with its (h, t), ordered by (h, t) and then data."""
    return [
        (d, sol)
        for sol in admissible_solutions(g, i, p)
        for d in classes_for_solution(i, p, sol)
    ]
