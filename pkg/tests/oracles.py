"""Independent reference implementations used by the tests.

None of these call into the package beyond plain data types.
"""

import itertools
from math import comb

from sympy import Matrix
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix


def rh_pairs(g, p):
    """Scan the rectangle h in [0, g], t in [0, 2g+2p]."""
    return {
        (h, t)
        for h in range(g + 1)
        for t in range(2 * g + 2 * p + 1)
        if 2 * g - 2 == p * (2 * h - 2) + t * (p - 1)
    }


def gen_rh_triples(g, p):
    bound = 2 * g - 2 + 2 * p * p
    return {
        (h, s, t)
        for h in range(g + 1)
        for s in range(bound + 1)
        for t in range(bound + 1)
        if 2 * g - 2 == p * p * (2 * h - 2) + s * p * (p - 1) + t * (p * p - 1)
    }


def _ordered_sums(k, p):
    """counts[r] = number of tuples in [1,p-1]^k with sum = r mod p."""
    counts = [1] + [0] * (p - 1)
    for _ in range(k):
        new = [0] * p
        for r, c in enumerate(counts):
            for b in range(1, p):
                new[(r + b) % p] += c
        counts = new
    return counts


def _multiset_sums(k, p):
    """counts[r] = number of size-k multisets from [1,p-1] with sum = r mod p."""
    # dp over residues 1..p-1, choosing a multiplicity for each
    dp = {(0, 0): 1}
    for b in range(1, p):
        new = {}
        for (size, r), c in dp.items():
            for m in range(k - size + 1):
                key = (size + m, (r + m * b) % p)
                new[key] = new.get(key, 0) + c
        dp = new
    return [dp.get((k, r), 0) for r in range(p)]


def class_count(g, i, p):
    """Number of conjugacy classes of order-p subgroups of Gamma_g^i.

    The set of valid (ordered prefix, multiset suffix) pairs is counted by
    residue convolution; (Z/p)^x acts freely on it when i >= 1, so the orbit
    count is that number divided by p-1.
    """
    total = 0
    for h, t in rh_pairs(g, p):
        if t == 1 or t < i:
            continue
        a = _ordered_sums(i, p)
        b = _multiset_sums(t - i, p)
        valid = sum(a[r] * b[(-r) % p] for r in range(p))
        assert valid % (p - 1) == 0
        total += valid // (p - 1)
    return total


def multisets(n, k):
    return comb(n + k - 1, k)


def fp_rank(rows, p):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


def fp_nullspace_dim(rows, p):
    return len(rows[0]) - fp_rank(rows, p)


def fixed_vectors(cols, p):
    """All v in F_p^n with sigma v = v, by enumeration."""
    n = len(cols)
    out = []
    for v in itertools.product(range(p), repeat=n):
        image = [sum(cols[j][r] * v[j] for j in range(n)) % p for r in range(n)]
        if tuple(image) == v:
            out.append(v)
    return out


def integer_power(cols, k):
    m = Matrix(cols).T
    return m ** k
