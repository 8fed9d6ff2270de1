"""Exact linear algebra over F_p for group actions on small modules.

Matrices act on column vectors; column j of an action matrix is the image of
the j-th basis vector. Subspaces are stored by a basis in reduced row echelon
form, so a basis such as ``B42 + 2 B43`` is a literal, comparable value.

The cyclic Tate groups follow the usual recipe for <sigma> of order q::

    H^0 = M^sigma
    H^even (> 0) = M^sigma / N(M)       (coker of the norm)
    H^odd        = ker(N: M_sigma -> M^sigma)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError

Vector = tuple[int, ...]


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p. Returns (non-zero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [(x - f * y) % p for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


@dataclass(frozen=True)
class FpMatrix:
    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(x % self.p for x in r) for r in self.entries)
        if len({len(r) for r in rows}) > 1:
            raise DomainError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], p: int) -> FpMatrix:
        n = len(columns[0]) if columns else 0
        return cls(p, tuple(tuple(col[r] for col in columns) for r in range(n)))

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls(p, tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(p, tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, tuple(zip(*self.entries)) if self.entries else ())

    def _check(self, other: FpMatrix) -> None:
        if self.p != other.p:
            raise DomainError(f"moduli differ: {self.p} vs {other.p}")

    def __add__(self, other: FpMatrix) -> FpMatrix:
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("dimension mismatch")
        return FpMatrix(
            self.p,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> FpMatrix:
        return FpMatrix(self.p, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: FpMatrix) -> FpMatrix:
        return self + (-other)

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise DomainError("dimension mismatch")
        cols = list(zip(*other.entries)) if other.entries else []
        return FpMatrix(
            self.p,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries),
        )

    def __pow__(self, n: int) -> FpMatrix:
        if n < 0:
            raise DomainError("negative powers are not supported")
        out = FpMatrix.identity(self.rows, self.p)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == FpMatrix.identity(self.rows, self.p)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def rank(self) -> int:
        return len(rref(self.entries, self.p)[1])

    def kernel(self) -> Subspace:
        """Right kernel {v : Av = 0}."""
        red, pivots = rref(self.entries, self.p)
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for row, pc in zip(red, pivots):
                v[pc] = -row[f] % self.p
            basis.append(v)
        return Subspace.span(basis, self.p, self.cols)

    def image(self) -> Subspace:
        return Subspace.span(self.columns(), self.p, self.rows)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n given by a basis in reduced row echelon form."""

    p: int
    dim_ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], p: int, n: int) -> Subspace:
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(p, n, (), ())
        red, piv = rref(vectors, p)
        return cls(p, n, tuple(tuple(r) for r in red), tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(list(self.basis) + [list(v)], self.p, self.dim_ambient).dim == self.dim

    def same_span(self, vectors: Sequence[Sequence[int]]) -> bool:
        return self == Subspace.span(vectors, self.p, self.dim_ambient)

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)


@dataclass(frozen=True)
class Coinvariants:
    """Quotient M / span{(sigma - 1)v}.

    ``representatives`` are standard basis vectors e_j, taken greedily from the
    lowest index, whose classes form a basis of the quotient.
    """

    p: int
    relations: Subspace
    representatives: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def vectors(self) -> list[Vector]:
        n = self.relations.dim_ambient
        return [tuple(int(k == j) for k in range(n)) for j in self.representatives]

    def is_zero_class(self, v: Sequence[int]) -> bool:
        return self.relations.contains(v)


def _check_generators(gens: Sequence[FpMatrix]) -> int:
    if not gens:
        raise DomainError("at least one generator is required")
    n = gens[0].rows
    for g in gens:
        if not g.is_square or g.rows != n or g.p != gens[0].p:
            raise DomainError("generators must be square matrices of one size over one field")
        if g.rank() != n:
            raise DomainError("generator is not invertible")
    return n


def invariants(gens: Sequence[FpMatrix]) -> Subspace:
    """Common fixed vectors of all generators."""
    n = _check_generators(gens)
    p = gens[0].p
    ident = FpMatrix.identity(n, p)
    stacked = [row for g in gens for row in (g - ident).entries]
    return FpMatrix(p, tuple(stacked)).kernel() if stacked else Subspace.span([], p, n)


def coinvariants(gens: Sequence[FpMatrix]) -> Coinvariants:
    n = _check_generators(gens)
    p = gens[0].p
    ident = FpMatrix.identity(n, p)
    rel = Subspace.span([c for g in gens for c in (g - ident).columns()], p, n)
    reps = []
    current = rel
    for j in range(n):
        e = tuple(int(k == j) for k in range(n))
        if not current.contains(e):
            reps.append(j)
            current = Subspace.span(list(current.basis) + [e], p, n)
    return Coinvariants(p, rel, tuple(reps))


@dataclass(frozen=True)
class NormMap:
    """The norm 1 + sigma + ... + sigma^(q-1), and its factorisation
    coinvariants -> invariants."""

    q: int
    matrix: FpMatrix
    source: Coinvariants
    target: Subspace

    def on_representatives(self) -> list[Vector]:
        """Images N(e_j) of the coinvariant representatives."""
        return [self.matrix.column(j) for j in self.source.representatives]

    @property
    def image(self) -> Subspace:
        return Subspace.span(self.on_representatives(), self.matrix.p, self.matrix.rows)

    @property
    def rank(self) -> int:
        return self.image.dim

    @property
    def kernel_dim(self) -> int:
        return self.source.dim - self.rank

    @property
    def cokernel_dim(self) -> int:
        return self.target.dim - self.rank

    @property
    def is_isomorphism(self) -> bool:
        return self.kernel_dim == 0 and self.cokernel_dim == 0


def _check_order(sigma: FpMatrix, q: int) -> None:
    if q < 1:
        raise DomainError(f"order must be positive, got {q}")
    if not sigma.is_square or not (sigma ** q).is_identity():
        raise DomainError(f"matrix does not satisfy sigma^{q} = 1")


def norm_map(sigma: FpMatrix, q: int) -> NormMap:
    _check_order(sigma, q)
    n, p = sigma.rows, sigma.p
    total = FpMatrix.zero(n, n, p)
    power = FpMatrix.identity(n, p)
    for _ in range(q):
        total = total + power
        power = power @ sigma
    return NormMap(q, total, coinvariants([sigma]), invariants([sigma]))


@dataclass(frozen=True)
class CyclicTate:
    """Cohomology of a cyclic group <sigma> of order q with coefficients in an
    F_p-module, recorded by degree class."""

    order: int
    p: int
    degree0: int
    even: int
    odd: int
    kernel_basis: tuple[Vector, ...] = ()
    cokernel_basis: tuple[Vector, ...] = ()

    def dim(self, degree: int) -> int:
        if degree < 0:
            raise DomainError("only non-negative degrees are reported")
        if degree == 0:
            return self.degree0
        return self.even if degree % 2 == 0 else self.odd


def tate_cyclic(sigma: FpMatrix, q: int) -> CyclicTate:
    nm = norm_map(sigma, q)
    inv = nm.target
    if math.gcd(sigma.p, q) == 1:
        return CyclicTate(q, sigma.p, inv.dim, 0, 0)
    n, p = sigma.rows, sigma.p
    reps = nm.on_representatives()
    # kernel of the induced norm, lifted to combinations of representatives
    ker_coeffs = FpMatrix.from_columns(reps, p).kernel().basis if reps else ()
    kernel_vectors = []
    for coeffs in ker_coeffs:
        v = [0] * n
        for c, j in zip(coeffs, nm.source.representatives):
            v[j] = c
        kernel_vectors.append(tuple(v))
    image = nm.image
    cokernel_vectors = []
    current = image
    for v in inv.basis:
        if not current.contains(v):
            cokernel_vectors.append(v)
            current = Subspace.span(list(current.basis) + [v], p, n)
    return CyclicTate(
        q, p, inv.dim, nm.cokernel_dim, nm.kernel_dim,
        tuple(kernel_vectors), tuple(cokernel_vectors),
    )


def format_vector(v: Sequence[int], labels: Sequence[str]) -> str:
    """Render a coefficient vector like ``B42+2B43``."""
    terms = []
    for c, name in zip(v, labels):
        if c == 0:
            continue
        terms.append(name if c == 1 else f"{c}{name}")
    return "+".join(terms) if terms else "0"
