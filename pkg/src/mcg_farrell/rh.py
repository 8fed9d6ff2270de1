"""Riemann-Hurwitz bookkeeping for Z/p actions on a closed genus-g surface.

A subgroup Z/p acting on S_g with quotient genus h and t fixed points satisfies

    2g - 2 = p(2h - 2) + t(p - 1).

``solve_rh`` returns every non-negative solution; ``admissible_solutions``
keeps those with t != 1 and t >= i, which are exactly the fixed-point counts
realised by order-p subgroups of the pure mapping class group Gamma_g^i.

>>> solve_rh(2, 2)
(RHSolution(h=0, t=6), RHSolution(h=1, t=2))
>>> torsion_primes(2, 4)
(2, 3)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

# Groups listed in the summary table of (h, t) solutions.
REMARK_GROUPS = {1: (1, 2, 3, 4), 2: (1, 2, 3, 4, 5, 6), 3: (1, 2, 3, 4, 5, 6, 7, 8)}
REMARK_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True, order=True)
class RHSolution:
    h: int
    t: int

    def __str__(self):
        return f"({self.h},{self.t})"

    def genus(self, p: int) -> int:
        """Genus of the covering surface determined by (p, h, t)."""
        twice = p * (2 * self.h - 2) + self.t * (p - 1) + 2
        if twice % 2:
            raise DomainError(f"{self} does not come from an integral genus at p={p}")
        return twice // 2


@dataclass(frozen=True, order=True)
class GenRHSolution:
    """Solution of the Riemann-Hurwitz equation for Z/p^2: ``s`` points with
    stabiliser of order p, ``t`` points with stabiliser of order p^2."""

    h: int
    s: int
    t: int

    def __str__(self):
        return f"({self.h},{self.s},{self.t})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def _check_genus_prime(g: int, p: int) -> None:
    if g < 1:
        raise DomainError(f"genus must be >= 1, got {g} (genus 0 is Cohen's computation)")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def solve_rh(g: int, p: int) -> tuple[RHSolution, ...]:
    """All non-negative (h, t) with 2g-2 = p(2h-2) + t(p-1), sorted by h then t."""
    _check_genus_prime(g, p)
    out = []
    h = 0
    while p * (2 * h - 2) <= 2 * g - 2:
        rest = 2 * g - 2 - p * (2 * h - 2)
        if rest % (p - 1) == 0:
            out.append(RHSolution(h, rest // (p - 1)))
        h += 1
    return tuple(out)


def admissible_solutions(g: int, i: int, p: int) -> tuple[RHSolution, ...]:
    """Solutions realised by a subgroup of order p in Gamma_g^i (t != 1, t >= i)."""
    if i < 1:
        raise DomainError(f"number of punctures must be >= 1, got {i}")
    return tuple(s for s in solve_rh(g, p) if s.t != 1 and s.t >= i)


def lemma_bound(g: int, i: int) -> int:
    """Largest prime that can possibly occur as torsion in Gamma_g^i."""
    if i > 2:
        return (2 * g) // (i - 2) + 1
    return 2 * g + 1


def torsion_primes(g: int, i: int, ceiling: int | None = None) -> tuple[int, ...]:
    """Primes p for which Gamma_g^i contains a subgroup of order p.

    The search is limited to p <= ``lemma_bound(g, i)``; a caller-supplied
    ``ceiling`` can only lower it.
    """
    if g < 1:
        raise DomainError(f"genus must be >= 1, got {g}")
    if i < 1:
        raise DomainError(f"number of punctures must be >= 1, got {i}")
    bound = lemma_bound(g, i)
    if ceiling is not None:
        bound = min(bound, ceiling)
    return tuple(p for p in primes_upto(bound) if admissible_solutions(g, i, p))


def solve_generalized_rh(g: int, p: int) -> tuple[GenRHSolution, ...]:
    """Non-negative (h, s, t) with 2g-2 = p^2(2h-2) + s p(p-1) + t(p^2-1)."""
    _check_genus_prime(g, p)
    q = p * p
    a, b = p * (p - 1), q - 1
    out = []
    h = 0
    while q * (2 * h - 2) <= 2 * g - 2:
        rest = 2 * g - 2 - q * (2 * h - 2)
        for t in range(rest // b + 1):
            r = rest - t * b
            if r % a == 0:
                out.append(GenRHSolution(h, r // a, t))
        h += 1
    return tuple(sorted(out))


def has_cyclic_p2(g: int, i: int, p: int) -> bool:
    """Whether a Z/p^2 can act on S_g fixing i marked points.

    A generator of Z/p^2 that fixes a point fixes it with full stabiliser, so
    the i marked points must all be among the ``t`` order-p^2 singular points.
    """
    return any(sol.t >= i for sol in solve_generalized_rh(g, p))


def remark_table() -> dict[tuple[tuple[int, int], int], tuple[RHSolution, ...]]:
    """Admissible (h, t) for every group and prime of the summary table."""
    table = {}
    for g, punctures in REMARK_GROUPS.items():
        for i in punctures:
            for p in REMARK_PRIMES:
                table[(g, i), p] = admissible_solutions(g, i, p)
    return table
