"""Sign types, their representation by integer vectors, and torsion detection.

A type on ``n`` coordinates is a sign tuple; it is identified with its
negative, and the ``2**(n-1)`` classes are listed with a leading ``+``.
A vector ``a`` represents ``tau`` when every nonzero coordinate has sign
``eta * tau_i`` for one global ``eta`` and ``sum |a_i| >= 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotMinimal

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class QType:
    """Sign tuple indexed by intervals; ``labels`` records the label set if not 1..n."""

    signs: Tuple[int, ...]
    labels: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"type entries must be +1 or -1, got {self.signs}")
        if self.labels is not None and len(self.labels) != len(self.signs):
            raise DimensionMismatch("label set and sign tuple differ in length")

    @classmethod
    def parse(cls, text: str, labels: Optional[Sequence[int]] = None) -> "QType":
        table = {"+": 1, "-": -1, "−": -1}
        try:
            signs = tuple(table[c] for c in text.strip())
        except KeyError:
            raise ValueError(f"not a sign string: {text!r}") from None
        return cls(signs, tuple(labels) if labels is not None else None)

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, k):
        return self.signs[k]

    def __neg__(self):
        return QType(tuple(-s for s in self.signs), self.labels)

    @property
    def is_trivial(self) -> bool:
        return len(set(self.signs)) <= 1

    def normalized(self) -> "QType":
        """The representative of ``{tau, -tau}`` with a leading ``+``."""
        return self if not self.signs or self.signs[0] > 0 else -self

    def same_class(self, other: "QType") -> bool:
        return self.normalized().signs == other.normalized().signs

    def at(self, k: int) -> int:
        """Sign on the ``k``-th interval, 1-based."""
        return self.signs[k - 1]


def all_types(n: int, labels: Optional[Sequence[int]] = None) -> List[QType]:
    lab = tuple(labels) if labels is not None else None
    return [QType((1,) + rest, lab) for rest in itertools.product((1, -1), repeat=n - 1)]


def trivial_type(n: int, labels: Optional[Sequence[int]] = None) -> QType:
    return QType((1,) * n, tuple(labels) if labels is not None else None)


def l1(a: Sequence[int]) -> int:
    return sum(abs(x) for x in a)


def support(a: Sequence[int]) -> Tuple[int, ...]:
    return tuple(k for k, x in enumerate(a) if x)


def represents(a: Sequence[int], tau: QType) -> bool:
    if len(a) != len(tau.signs):
        raise DimensionMismatch(f"vector has {len(a)} coordinates, type has {len(tau.signs)}")
    if l1(a) < 2:
        return False
    eta = 0
    for x, e in zip(a, tau.signs):
        if x:
            s = (1 if x > 0 else -1) * e
            if eta == 0:
                eta = s
            elif s != eta:
                return False
    return True


def types_represented(a: Sequence[int]) -> List[QType]:
    """Every type (up to sign) that ``a`` represents."""
    return [t for t in all_types(len(a)) if represents(a, t)]


def _type_mask(a: Sequence[int]) -> int:
    bits = 0
    for k, t in enumerate(all_types(len(a))):
        if represents(a, t):
            bits |= 1 << k
    return bits


def _dimension(A: Sequence[Sequence[int]], q: Optional[int]) -> int:
    dims = {len(a) for a in A}
    if q is not None:
        dims.add(q)
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of different lengths: {sorted(dims)}")
    if not dims:
        raise DimensionMismatch("dimension unknown for an empty set; pass q")
    return dims.pop()


def missing_types(A: Iterable[Sequence[int]], q: Optional[int] = None) -> List[QType]:
    A = [tuple(a) for a in A]
    if not A and q is None:
        return [QType(())]
    n = _dimension(A, q)
    return [t for t in all_types(n) if not any(represents(a, t) for a in A)]


def represents_all_types(A: Iterable[Sequence[int]], q: Optional[int] = None) -> bool:
    A = [tuple(a) for a in A]
    if not A:
        return False
    return not missing_types(A, q)


def support_count(A: Iterable[Sequence[int]]) -> int:
    """Number of coordinates that are nonzero in some member of ``A``."""
    used = set()
    for a in A:
        used.update(support(a))
    return len(used)


def pad(A: Iterable[Sequence[int]], extra: int = 1) -> List[Vector]:
    """Extend every vector by ``extra`` zero coordinates."""
    return [tuple(a) + (0,) * extra for a in A]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` and the cokernel's free rank."""

    factors: Tuple[int, ...]
    free_rank: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)

    @property
    def has_torsion(self) -> bool:
        return bool(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> Optional[int]:
        """Order of the cokernel, or ``None`` if it is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SNFResult:
    """Invariant factors of an integer matrix, with exact integers.

    The cokernel of the row span is ``Z^free_rank`` plus ``Z/d`` for each
    factor ``d``.
    """
    M = [list(map(int, r)) for r in rows]
    if ncols is None:
        if not M:
            raise DimensionMismatch("column count unknown for an empty matrix")
        ncols = len(M[0])
    if any(len(r) != ncols for r in M):
        raise DimensionMismatch("ragged matrix")
    m, n = len(M), ncols
    diag: List[int] = []
    t = 0
    while t < m and t < n:
        # pivot on the entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for r in M:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                f = M[i][t] // piv
                if f:
                    row_t, row_i = M[t], M[i]
                    for j in range(t, n):
                        row_i[j] -= f * row_t[j]
                if M[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                f = M[t][j] // piv
                if f:
                    for r in M:
                        r[j] -= f * r[t]
                if M[t][j]:
                    dirty = True
            if not dirty:
                # make the pivot divide the whole remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if M[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_b, row_t = M[bad], M[t]
                for j in range(t, n):
                    row_t[j] += row_b[j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (t, t)
            for i in range(t + 1, m):
                if M[i][t] and abs(M[i][t]) < abs(M[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, n):
                if M[t][j] and abs(M[t][j]) < abs(M[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            if i != t:
                M[t], M[i] = M[i], M[t]
            if j != t:
                for r in M:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(M[t][t]))
        t += 1
    # the elimination already yields a divisibility chain; normalise defensively
    for a in range(len(diag)):
        for b in range(a + 1, len(diag)):
            g = gcd(diag[a], diag[b])
            if g != diag[a]:
                diag[a], diag[b] = g, diag[a] * diag[b] // g
    return SNFResult(tuple(diag), n - len(diag), n)


@lru_cache(maxsize=1 << 16)
def _snf_cached(rows: Tuple[Vector, ...], ncols: int) -> SNFResult:
    return smith_normal_form(rows, ncols)


def cokernel(A: Sequence[Sequence[int]], q: Optional[int] = None) -> SNFResult:
    """``Z^q / (A)`` described by its invariant factors."""
    A = tuple(tuple(a) for a in A)
    n = _dimension(A, q)
    return _snf_cached(A, n)


def has_torsion(A: Sequence[Sequence[int]], q: Optional[int] = None) -> bool:
    return cokernel(A, q).has_torsion


def find_torsion_subset(A: Sequence[Sequence[int]], q: Optional[int] = None) -> Optional[Tuple[Vector, ...]]:
    """Smallest subset (first in index order) whose cokernel has torsion.

    Returns ``None`` when no subset has torsion, which can only happen if
    ``A`` does not represent all types.
    """
    A = [tuple(a) for a in A]
    if not A:
        return None
    n = _dimension(A, q)
    for size in range(1, len(A) + 1):
        for idx in itertools.combinations(range(len(A)), size):
            sub = tuple(A[k] for k in idx)
            if _snf_cached(sub, n).has_torsion:
                return sub
    return None


def is_minimal_all_types(A: Sequence[Sequence[int]], q: Optional[int] = None) -> bool:
    A = [tuple(a) for a in A]
    if not represents_all_types(A, q):
        return False
    for k in range(len(A)):
        if represents_all_types(A[:k] + A[k + 1:], q if q is not None else len(A[0])):
            return False
    return True


def rational_rank(A: Sequence[Sequence[int]], q: Optional[int] = None) -> int:
    A = tuple(tuple(a) for a in A)
    if not A:
        return 0
    return cokernel(A, q).rank


def basis_subset(A: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    """First (in index order) subset of size ``c(A)`` that is independent over Q."""
    A = [tuple(a) for a in A]
    c = support_count(A)
    cols = sorted({k for a in A for k in support(a)})
    for idx in itertools.combinations(range(len(A)), c):
        sub = [tuple(A[k][j] for j in cols) for k in idx]
        if rational_rank(sub, c) == c:
            return tuple(A[k] for k in idx)
    return ()


def check_basis_property(A: Sequence[Sequence[int]], q: Optional[int] = None) -> bool:
    """Whether a minimal all-types set contains a basis of R^{c(A)}."""
    A = [tuple(a) for a in A]
    if not is_minimal_all_types(A, q):
        raise NotMinimal("the vector set is not a minimal representative of all types")
    return len(basis_subset(A)) == support_count(A)


# ---------------------------------------------------------------------------
# exhaustive search over small vector sets


def signed_permutations(n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield perm, signs


def _act(a: Vector, perm, signs) -> Vector:
    return tuple(signs[k] * a[perm[k]] for k in range(len(a)))


def _sign_normal(a: Vector) -> Vector:
    for x in a:
        if x:
            return a if x > 0 else tuple(-y for y in a)
    return a


def candidate_vectors(q: int, bound: int) -> List[Vector]:
    """Vectors with entries in ``[-bound, bound]`` that represent some type, one per +-pair."""
    out = []
    for a in itertools.product(range(-bound, bound + 1), repeat=q):
        if l1(a) >= 2 and _sign_normal(a) == a:
            out.append(a)
    return out


@dataclass
class TorsionSurvey:
    q: int
    bound: int
    minimal_sets: int = 0
    orbits: int = 0
    with_torsion: int = 0
    full_quotient_trivial: int = 0
    largest: int = 0
    failures: Tuple[Tuple[Vector, ...], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures and self.with_torsion == self.orbits


def minimal_all_types_sets(q: int, bound: int) -> Iterator[Tuple[Vector, ...]]:
    """Every minimal all-types set of vectors with entries bounded by ``bound``.

    Vectors are taken up to sign, since ``a`` and ``-a`` represent the same
    types and span the same lattice.  A minimal set has at most ``2**(q-1)``
    members (each must be the sole representative of some type).
    """
    vecs = candidate_vectors(q, bound)
    masks = [_type_mask(a) for a in vecs]
    full = (1 << (2 ** (q - 1))) - 1
    limit = 2 ** (q - 1)

    def rec(start, chosen, cover):
        if cover == full:
            if all(_others(chosen, k) != full for k in range(len(chosen))):
                yield tuple(vecs[k] for k in chosen)
            return
        if len(chosen) == limit:
            return
        for k in range(start, len(vecs)):
            m = masks[k]
            if m & ~cover:
                chosen.append(k)
                yield from rec(k + 1, chosen, cover | m)
                chosen.pop()

    def _others(chosen, skip):
        out = 0
        for t, k in enumerate(chosen):
            if t != skip:
                out |= masks[k]
        return out

    yield from rec(0, [], 0)


def canonical_vector_set(A: Sequence[Vector]) -> Tuple[Vector, ...]:
    n = len(A[0])
    best = None
    for perm, signs in signed_permutations(n):
        img = tuple(sorted(_sign_normal(_act(a, perm, signs)) for a in A))
        if best is None or img < best:
            best = img
    return best


def survey_torsion(q: int, bound: int) -> TorsionSurvey:
    """Check, for every minimal all-types set, that some subset has torsion.

    Any all-types set contains a minimal one, so this covers all all-types
    sets with entries in ``[-bound, bound]``.
    """
    out = TorsionSurvey(q, bound)
    seen = set()
    failures = []
    for A in minimal_all_types_sets(q, bound):
        out.minimal_sets += 1
        key = canonical_vector_set(A)
        if key in seen:
            continue
        seen.add(key)
        out.orbits += 1
        out.largest = max(out.largest, len(A))
        if cokernel(key).is_trivial:
            out.full_quotient_trivial += 1
        if find_torsion_subset(key) is not None:
            out.with_torsion += 1
        else:
            failures.append(key)
    out.failures = tuple(failures)
    return out
