"""Corner vectors of faces and the faces that represent types.

A face's corner word lists, around its boundary, the interval of each
corner and the sign of the vertex where it sits.  Its corner vector is
the signed count per interval.  A face represents a type when the
corner vector does and no interval occurs at vertices of both signs
(coherence).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InconsistentSides, NotAllTypes, TheoremViolation
from .graph import Face, LabelledFatGraph
from .type_algebra import QType, all_types, represents


@dataclass(frozen=True)
class CornerWord:
    letters: Tuple[Tuple[int, int], ...]  # (interval index, vertex sign)
    size: int

    @property
    def vector(self) -> Tuple[int, ...]:
        v = [0] * self.size
        for lam, s in self.letters:
            v[lam - 1] += s
        return tuple(v)

    @property
    def coherent(self) -> bool:
        seen: Dict[int, int] = {}
        for lam, s in self.letters:
            if seen.setdefault(lam, s) != s:
                return False
        return True

    @property
    def intervals(self) -> Tuple[int, ...]:
        return tuple(sorted({lam for lam, _ in self.letters}))

    def __len__(self):
        return len(self.letters)


def corner_word(face: Face, size: int) -> CornerWord:
    """``size`` is the number of intervals: q for G_P, or |L| for G(L)."""
    return CornerWord(tuple((c.interval, c.sign) for c in face.corners), size)


def word_represents(word: CornerWord, tau: QType) -> bool:
    return word.coherent and represents(word.vector, tau)


def face_represents(face: Face, tau: QType) -> bool:
    return word_represents(corner_word(face, len(tau)), tau)


# ---------------------------------------------------------------------------
# families of faces


@dataclass
class AllTypesWitness:
    """Outcome of an all-types search over a family of faces.

    ``witness`` maps each type (leading ``+``) to the first face index that
    represents it.  If some type is missed, ``missing`` holds one such type
    and ``witness`` is partial.
    """

    witness: Dict[str, int]
    missing: Optional[QType] = None
    minimal: Optional[Tuple[int, ...]] = None

    @property
    def ok(self) -> bool:
        return self.missing is None


def family_witness(words: Sequence[Tuple[int, CornerWord]], size: int,
                   want_minimal: bool = False) -> AllTypesWitness:
    witness: Dict[str, int] = {}
    missing = None
    for tau in all_types(size):
        hit = next((idx for idx, w in words if word_represents(w, tau)), None)
        if hit is None:
            if missing is None:
                missing = tau
        else:
            witness[str(tau)] = hit
    out = AllTypesWitness(witness, missing)
    if want_minimal and out.ok:
        out.minimal = minimal_family(words, size)
    return out


def _covers(words, size) -> bool:
    return all(any(word_represents(w, tau) for _, w in words) for tau in all_types(size))


def minimal_family(words: Sequence[Tuple[int, CornerWord]], size: int) -> Tuple[int, ...]:
    """Greedy deletion down to a family from which no face can be dropped."""
    keep = list(words)
    k = len(keep) - 1
    while k >= 0:
        trial = keep[:k] + keep[k + 1:]
        if trial and _covers(trial, size):
            keep = trial
        k -= 1
    return tuple(idx for idx, _ in keep)


def disk_faces(faces: Iterable[Face]) -> List[Face]:
    return [f for f in faces if f.is_disk]


def graph_represents_all_types(g: LabelledFatGraph, faces: Optional[Sequence[Face]] = None,
                               size: Optional[int] = None, want_minimal: bool = False) -> AllTypesWitness:
    """Whether the disk faces of ``g`` (or of the given subface list) represent all types."""
    faces = g.faces if faces is None else faces
    size = g.companion if size is None else size
    words = [(f.index, corner_word(f, size)) for f in disk_faces(faces)]
    return family_witness(words, size, want_minimal)


# ---------------------------------------------------------------------------
# one-sided reductions

B, W, BW, WB = "B", "W", "BW", "WB"
SIDE_CLASSES = (B, W, BW, WB)


@dataclass(frozen=True)
class SideClass:
    """Class of each interval: which sides its 1-handle starts and ends on.

    The handle over interval ``(i, i+1)`` is oriented from the end at ``i``
    to the end at ``i+1``.
    """

    classes: Tuple[str, ...]

    def __post_init__(self):
        bad = [c for c in self.classes if c not in SIDE_CLASSES]
        if bad:
            raise ValueError(f"unknown side classes {bad}")

    @classmethod
    def from_ends(cls, ends: Sequence[str]) -> "SideClass":
        """From the side of each label's end, ``ends[i-1]`` in {B, W}.

        Interval ``(i, i+1)`` runs from the side of ``i`` to the side of
        ``i+1``; this is the partition of interval ends used when a disk is
        cut along an arc or circle.
        """
        n = len(ends)
        return cls(tuple(ends[k] + ends[(k + 1) % n] if ends[k] != ends[(k + 1) % n] else ends[k]
                         for k in range(n)))

    def of(self, lam: int) -> str:
        return self.classes[lam - 1]

    def members(self, cls_: str) -> Tuple[int, ...]:
        return tuple(k + 1 for k, c in enumerate(self.classes) if c == cls_)


def _start_end(cls_: str) -> Tuple[str, str]:
    return (cls_[0], cls_[-1])


def face_sides(word: CornerWord, sides: SideClass) -> str:
    """Side on which the face lies locally: ``B``, ``W`` or ``mixed``.

    Walking the boundary, a corner at a positive vertex crosses its handle
    from the ``i`` end to the ``i+1`` end and a corner at a negative vertex
    the other way; the side after each corner must be the side before the
    next one.  A break in that chain raises ``InconsistentSides``.
    """
    n = len(word.letters)
    steps = []
    for lam, s in word.letters:
        a, b = _start_end(sides.of(lam))
        steps.append((a, b) if s > 0 else (b, a))
    for k in range(n):
        if steps[k][1] != steps[(k + 1) % n][0]:
            raise InconsistentSides(
                f"corner {k} ends on side {steps[k][1]} but corner {(k + 1) % n} "
                f"starts on side {steps[(k + 1) % n][0]}")
    kinds = {sides.of(lam) for lam, _ in word.letters}
    if kinds == {B}:
        return B
    if kinds == {W}:
        return W
    return "mixed"


@dataclass
class Reduction:
    faces: Tuple[int, ...]
    side: str


def _reduce(words: Sequence[Tuple[int, CornerWord]], sides: SideClass, size: int,
            tags: Optional[Mapping[int, str]]) -> Reduction:
    derived = {idx: face_sides(w, sides) for idx, w in words}
    if tags:
        for idx, tag in tags.items():
            if idx in derived and tag != derived[idx]:
                raise InconsistentSides(
                    f"face {idx} is tagged {tag} but its corners put it on side {derived[idx]}")
    full = family_witness(words, size)
    if not full.ok:
        raise NotAllTypes(f"the family misses type {full.missing}", missing=full.missing)
    missed: Dict[str, QType] = {}
    for side in (B, W):
        if not sides.members(side):
            continue
        sub = [(idx, w) for idx, w in words if derived[idx] == side]
        res = family_witness(sub, size)
        if res.ok:
            return Reduction(tuple(idx for idx, _ in sub), side)
        missed[side] = res.missing
    # neither side suffices: the type assembled below has no representative
    signs = []
    for lam in range(1, size + 1):
        c = sides.of(lam)
        if c in missed:
            signs.append(missed[c].at(lam))
        elif c == BW:
            signs.append(1)
        elif c == WB:
            signs.append(-1)
        else:
            signs.append(1)
    tau = QType(tuple(signs))
    hit = next((idx for idx, w in words if word_represents(w, tau)), None)
    if hit is None:
        # cannot happen when the family represents all types
        raise TheoremViolation(f"type {tau} has no representative although all types are represented")
    raise TheoremViolation(
        f"face {hit} represents {tau} while neither side represents all types; "
        "its mixed corners would all run from B to W")


def same_side_reduction(faces: Sequence[Face], size: int, sides: SideClass,
                        tags: Optional[Mapping[int, str]] = None) -> Reduction:
    """A sub-family lying locally on one side that still represents all types.

    ``tags`` optionally gives the side (``B``, ``W`` or ``mixed``) of faces
    by index; given tags are checked against the corner words.
    """
    if len(sides.classes) != size:
        raise ValueError("side classes must cover every interval")
    words = [(f.index, corner_word(f, size)) for f in faces]
    return _reduce(words, sides, size, tags)


def split_disk_reduction(faces: Sequence[Face], size: int, part: Sequence[int]) -> Reduction:
    """A sub-family whose corners avoid intervals with an end outside one part.

    ``part[i-1]`` in {1, 2} says which piece of the cut disk holds the end
    at label ``i``.  The result's ``side`` is ``"1"`` or ``"2"``.
    """
    if len(part) != size or any(x not in (1, 2) for x in part):
        raise ValueError("part must assign 1 or 2 to every label")
    sides = SideClass.from_ends([B if x == 1 else W for x in part])
    words = [(f.index, corner_word(f, size)) for f in faces]
    red = _reduce(words, sides, size, None)
    return Reduction(red.faces, "1" if red.side == B else "2")


def words_from_vectors(vectors: Sequence[Sequence[int]]) -> List[Tuple[int, CornerWord]]:
    """Coherent corner words realising given vectors, one per vector."""
    out = []
    for k, v in enumerate(vectors):
        letters = []
        for lam, x in enumerate(v, start=1):
            letters.extend([(lam, 1 if x > 0 else -1)] * abs(x))
        out.append((k, CornerWord(tuple(letters), len(v))))
    return out
