"""Even positive-definite root lattices and bounded dual-coset enumeration.

Lattices are realized concretely as Z^rank with an integer Gram matrix.  The
dual lattice lives in the same rational coordinates (it is spanned by the
columns of the inverse Gram matrix), so the pairing of a dual vector ``l``
with a lattice vector ``v`` is always ``l^T A v``.

Two enumeration paths are provided:

* :func:`enumerate_coset` - exact Fincke-Pohst search with rational pivots,
  returning the actual vectors.  Meant for small bounds and cross-checks.
* :func:`pairing_counts` - a bulk integer counting path used by theta
  pullbacks.  Candidates are generated with guarded floating-point bounds and
  then verified with exact integer arithmetic, so the resulting counts are
  exact; numpy only accelerates the candidate generation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .qseries import as_fraction

Vector = Tuple[Fraction, ...]


class UnknownLatticeError(KeyError):
    """Requested lattice is not in the registry."""


@dataclass(frozen=True)
class Coset:
    """One coset of the discriminant group, in rational ambient coordinates."""

    index: int
    rep: Vector
    norm_mod1: Fraction
    denominator: int

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.rep)


@dataclass(frozen=True)
class LatticeData:
    name: str
    rank: int
    gram: Tuple[Tuple[int, ...], ...]
    cosets: Tuple[Coset, ...]
    #: Partition of the integer-norm cosets into cusp orbit classes, as coset
    #: indices; only defined for the lattices whose orbit structure the
    #: pipeline uses (D8, E6, E7).
    cusp_orbits: Optional[Tuple[Tuple[int, ...], ...]]

    def coset(self, index: int) -> Coset:
        return self.cosets[index]

    @property
    def discriminant(self) -> int:
        return len(self.cosets)


# ---------------------------------------------------------------------------
# Gram matrices


def _cartan_a(n: int) -> List[List[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _cartan_d(n: int) -> List[List[int]]:
    # Chain 0-1-...-(n-3), with node n-3 joined to both n-2 and n-1.
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 3):
        m[i][i + 1] = m[i + 1][i] = -1
    m[n - 3][n - 2] = m[n - 2][n - 3] = -1
    m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return m


def _copies_a1(n: int) -> List[List[int]]:
    return [[2 if i == j else 0 for j in range(n)] for i in range(n)]


_E6_GRAM = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
]

_E7_GRAM = [
    [2, 0, -1, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, -1, 2],
]


def _gram_table() -> Dict[str, List[List[int]]]:
    table: Dict[str, List[List[int]]] = {}
    for n in range(1, 8):
        table[f"A{n}"] = _cartan_a(n)
    for n in (2, 3, 4):
        table[f"{n}A1"] = _copies_a1(n)
    for n in (4, 5, 6, 7, 8):
        table[f"D{n}"] = _cartan_d(n)
    table["E6"] = _E6_GRAM
    table["E7"] = _E7_GRAM
    return table


_GRAMS = _gram_table()


def gram_matrix(name: str) -> Tuple[Tuple[int, ...], ...]:
    """Exact Gram matrix of a registered lattice."""
    try:
        return tuple(tuple(row) for row in _GRAMS[name])
    except KeyError:
        raise UnknownLatticeError(f"unknown lattice {name!r}; known: {sorted(_GRAMS)}") from None


def registered_lattices() -> List[str]:
    return sorted(_GRAMS)


# ---------------------------------------------------------------------------
# Exact linear algebra helpers


def _inverse(gram) -> List[List[Fraction]]:
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _ldl(gram) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Exact decomposition Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise ValueError("gram matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = q[i][j] / d[i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[i][k] * q[i][m] / d[i]
                q[m][k] = q[k][m]
    return d, u


# ---------------------------------------------------------------------------
# Discriminant group


def _discriminant_cosets(gram) -> List[Vector]:
    """All cosets of the dual modulo the lattice, reps with coordinates in [0,1)."""
    n = len(gram)
    inv = _inverse(gram)
    gens = [tuple(inv[i][j] % 1 for i in range(n)) for j in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % 1 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def norm_of(gram, v: Sequence) -> Fraction:
    """Q(v) = (v^T A v) / 2 in exact arithmetic."""
    n = len(gram)
    if len(v) != n:
        raise ValueError(f"vector has length {len(v)}, lattice rank is {n}")
    vv = [as_fraction(x) for x in v]
    total = Fraction(0)
    for i in range(n):
        row = gram[i]
        total += vv[i] * sum(Fraction(row[j]) * vv[j] for j in range(n))
    return total / 2


def _cusp_orbits(name: str, cosets: Sequence[Coset]) -> Optional[Tuple[Tuple[int, ...], ...]]:
    if name == "D8":
        zero = [c.index for c in cosets if c.is_zero()]
        spinors = [c.index for c in cosets if not c.is_zero() and c.norm_mod1 == 0]
        return (tuple(zero), tuple(sorted(spinors)))
    if name in ("E6", "E7"):
        zero = [c.index for c in cosets if c.is_zero()]
        return (tuple(zero),)
    return None


@lru_cache(maxsize=None)
def lattice(name: str) -> LatticeData:
    gram = gram_matrix(name)
    reps = _discriminant_cosets(gram)
    # Zero coset first, then sorted by (norm mod 1, coordinates).
    reps = sorted(reps, key=lambda r: (any(x != 0 for x in r), norm_of(gram, r) % 1, r))
    cosets = []
    for i, rep in enumerate(reps):
        den = lcm(1, *(x.denominator for x in rep))
        cosets.append(Coset(index=i, rep=rep, norm_mod1=norm_of(gram, rep) % 1, denominator=den))
    cosets = tuple(cosets)
    det = _det(gram)
    if len(cosets) != det:
        raise AssertionError(f"discriminant group of {name} has {len(cosets)} elements, det is {det}")
    return LatticeData(
        name=name,
        rank=len(gram),
        gram=gram,
        cosets=cosets,
        cusp_orbits=_cusp_orbits(name, cosets),
    )


def _det(gram) -> int:
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det)


# ---------------------------------------------------------------------------
# Pairings and norms on a LatticeData


def norm(lat: LatticeData, v: Sequence) -> Fraction:
    return norm_of(lat.gram, v)


def pairing(lat: LatticeData, dual_vec: Sequence, v: Sequence) -> int:
    """<l, v> = l^T A v; must be an integer when l is dual and v integral."""
    n = lat.rank
    if len(dual_vec) != n or len(v) != n:
        raise ValueError("dimension mismatch")
    lv = [as_fraction(x) for x in dual_vec]
    total = Fraction(0)
    for i in range(n):
        total += lv[i] * sum(Fraction(lat.gram[i][j]) * as_fraction(v[j]) for j in range(n))
    if total.denominator != 1:
        raise ValueError(f"pairing {total} is not integral; vector is not in the dual lattice")
    return int(total)


# ---------------------------------------------------------------------------
# Exact enumeration (reference path)


def enumerate_coset(lat: LatticeData, coset, qmax) -> List[Tuple[Vector, Fraction]]:
    """All l in coset + L with Q(l) <= qmax, with exact norms.

    ``coset`` may be a Coset, a coset index, or an explicit representative.
    Output is sorted lexicographically, complete and duplicate-free.
    """
    qmax = as_fraction(qmax)
    if qmax < 0:
        raise ValueError("qmax must be nonnegative")
    if isinstance(coset, Coset):
        rep = coset.rep
    elif isinstance(coset, int):
        rep = lat.cosets[coset].rep
    else:
        rep = tuple(as_fraction(x) for x in coset)
    n = lat.rank
    d, u = _ldl(lat.gram)
    out: List[Tuple[Vector, Fraction]] = []
    coords: List[Fraction] = [Fraction(0)] * n
    smax = 2 * qmax

    def recurse(i: int, remaining: Fraction):
        if i < 0:
            # the recursion has already accumulated y^T A y = smax - remaining
            out.append((tuple(coords), (smax - remaining) / 2))
            return
        center = -sum(u[i][j] * coords[j] for j in range(i + 1, n))
        # d_i (y_i + c)^2 <= remaining with y_i in rep[i] + Z
        bound = remaining / d[i]
        lo, hi = _fraction_sqrt_range(center, bound, rep[i])
        for t in range(lo, hi + 1):
            y = rep[i] + t
            coords[i] = y
            used = d[i] * (y - center) * (y - center)
            if used <= remaining:
                recurse(i - 1, remaining - used)
        coords[i] = Fraction(0)

    recurse(n - 1, smax)
    return sorted(out)


def _fraction_sqrt_range(center: Fraction, bound: Fraction, offset: Fraction) -> Tuple[int, int]:
    """Integer t-range covering offset + t in [center - sqrt(bound), center + sqrt(bound)].

    Uses an upper bound for the square root, so the range is a superset; the
    caller re-checks each candidate exactly.
    """
    if bound < 0:
        return (0, -1)
    num, den = bound.numerator, bound.denominator
    root_hi = Fraction(isqrt(num * den) + 1, den)  # >= sqrt(bound)
    lo = ceil(center - root_hi - offset)
    hi = floor(center + root_hi - offset)
    return lo, hi


# ---------------------------------------------------------------------------
# Bulk exact counting (numpy-assisted)

#: Cap on rows materialized by one expansion step; keeps peak memory bounded.
_EXPAND_CAP = 4_000_000


def pairing_counts(lat: LatticeData, coset, direction: Sequence[int], qmax) -> Dict[Tuple[int, int], int]:
    """Exact counts of coset vectors by (scaled norm, pairing with direction).

    Returns a dict mapping ``(s, r) -> count`` where ``s = 2*den^2*Q(l)`` (an
    integer; ``den`` is the coset denominator as scaled below) and
    ``r = <l, direction>``, over all ``l`` in the coset with ``Q(l) <= qmax``.
    Floating point is used only to generate candidates; membership is decided
    by exact integer arithmetic.
    """
    qmax = as_fraction(qmax)
    if isinstance(coset, Coset):
        rep = coset.rep
    elif isinstance(coset, int):
        rep = lat.cosets[coset].rep
    else:
        rep = tuple(as_fraction(x) for x in coset)
    n = lat.rank
    den = lcm(1, *(x.denominator for x in rep))
    g = np.array([int(x * den) for x in rep], dtype=np.int64)
    smax_frac = 2 * den * den * qmax
    smax = int(smax_frac)  # floor; points with s <= smax are exactly Q <= qmax
    if smax < 0:
        return {}

    a_int = np.array(lat.gram, dtype=np.int64)
    d, u = _ldl(lat.gram)
    df = np.array([float(x) for x in d])
    uf = np.array([[float(u[i][j]) for j in range(n)] for i in range(n)])

    v_int = np.array([int(x) for x in direction], dtype=np.int64)
    av = a_int @ v_int

    counts: Dict[Tuple[int, int], int] = {}
    smax_f = float(smax) * (1 + 1e-12) + 1e-6

    def finalize(ys: np.ndarray):
        if not len(ys):
            return
        ys64 = ys.astype(np.int64)
        norms = np.einsum("ij,jk,ik->i", ys64, a_int, ys64)
        keep = norms <= smax
        if not keep.any():
            return
        ys64 = ys64[keep]
        norms = norms[keep]
        dots = ys64 @ av
        if den != 1:
            if np.any(dots % den):
                raise AssertionError("pairing with a lattice vector must be integral")
            dots = dots // den
        rmax = int(np.abs(dots).max()) if len(dots) else 0
        key = norms * (2 * rmax + 3) + (dots + rmax + 1)
        uniq, cnt = np.unique(key, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            s, rr = divmod(k, 2 * rmax + 3)
            counts_key = (int(s), int(rr - rmax - 1))
            counts[counts_key] = counts.get(counts_key, 0) + int(c)

    def descend(ys: np.ndarray, ss: np.ndarray, level: int):
        if level < 0:
            finalize(ys)
            return
        if ys.shape[1]:
            centers = -(ys.astype(np.float64) @ uf[level, level + 1 :])
        else:
            centers = np.zeros(len(ys))
        rem = smax_f - ss
        valid = rem >= 0
        if not valid.all():
            ys, ss, centers, rem = ys[valid], ss[valid], centers[valid], rem[valid]
        if not len(ys):
            return
        w = np.sqrt(rem / df[level])
        lo = np.ceil((centers - w - g[level]) / den - 1e-9).astype(np.int64)
        hi = np.floor((centers + w - g[level]) / den + 1e-9).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        total = int(cnt.sum())
        if total == 0:
            return
        if total > _EXPAND_CAP and len(ys) > 1:
            mid = len(ys) // 2
            descend(ys[:mid], ss[:mid], level)
            descend(ys[mid:], ss[mid:], level)
            return
        idx = np.repeat(np.arange(len(ys)), cnt)
        starts = np.concatenate(([0], np.cumsum(cnt)[:-1]))
        offsets = np.arange(total) - np.repeat(starts, cnt)
        y_new = (g[level] + den * (lo[idx] + offsets)).astype(np.int32)
        ys_next = np.column_stack([y_new, ys[idx]]) if ys.shape[1] else y_new.reshape(-1, 1)
        diff = y_new.astype(np.float64) - centers[idx]
        ss_next = ss[idx] + df[level] * diff * diff
        descend(ys_next, ss_next, level - 1)

    descend(np.zeros((1, 0), dtype=np.int32), np.zeros(1), n - 1)
    return counts


def coset_scale(lat: LatticeData, coset_index: int) -> int:
    """Denominator used by pairing_counts for this coset (s = 2*den^2*Q)."""
    return lat.cosets[coset_index].denominator
