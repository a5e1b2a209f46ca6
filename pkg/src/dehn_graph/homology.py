"""First homology of a disk with handles attached along a family of faces.

One 0-handle, a 1-handle for each interval some face has a corner on, and
a 2-handle per face.  Abelianising the presentation leaves the relator
matrix of corner vectors restricted to the used intervals; H_1 is its
cokernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple, Union

from .errors import EmptyFamily, NotMinimal
from .face_rep import CornerWord, corner_word, family_witness, words_from_vectors
from .graph import Face
from .type_algebra import SNFResult, rational_rank, smith_normal_form

Member = Union[Face, CornerWord, Sequence[int]]


@dataclass(frozen=True)
class HandlePresentation:
    generators: Tuple[int, ...]  # intervals carrying a 1-handle
    relators: Tuple[Tuple[int, ...], ...]  # one row per face, indexed like ``generators``
    size: int

    def matrix(self) -> List[List[int]]:
        return [list(r) for r in self.relators]

    def describe(self) -> str:
        gens = ", ".join(f"h{g}" for g in self.generators)
        rows = "\n".join("  " + " ".join(f"{x:3d}" for x in r) for r in self.relators)
        return f"generators: {gens}\nrelators:\n{rows}"


def _words(family: Sequence[Member], size: int = None) -> List[CornerWord]:
    out = []
    for m in family:
        if isinstance(m, CornerWord):
            out.append(m)
        elif isinstance(m, Face):
            if size is None:
                raise ValueError("faces need the interval count")
            out.append(corner_word(m, size))
        else:
            out.append(words_from_vectors([m])[0][1])
    return out


def presentation(family: Sequence[Member], size: int = None) -> HandlePresentation:
    """Abelianised handle presentation for faces, corner words or corner vectors.

    Coherence is not needed here: each relator is the signed corner count.
    """
    words = _words(family, size)
    if not words:
        raise EmptyFamily("the face family is empty")
    n = words[0].size
    used = sorted({lam for w in words for lam, _ in w.letters})
    rel = tuple(tuple(w.vector[g - 1] for g in used) for w in words)
    return HandlePresentation(tuple(used), rel, n)


def h1_invariants(pres: HandlePresentation) -> SNFResult:
    return smith_normal_form(pres.relators, len(pres.generators))


def basis_subfamily(family: Sequence[Member], size: int = None) -> Tuple[int, ...]:
    """Indices of a sub-family whose relators form a rational basis.

    The family must represent all types with no member to spare.
    """
    words = _words(family, size)
    if not words:
        raise EmptyFamily("the face family is empty")
    n = words[0].size
    indexed = list(enumerate(words))
    if not family_witness(indexed, n).ok:
        raise NotMinimal("the family does not represent all types")
    for k in range(len(indexed)):
        if family_witness(indexed[:k] + indexed[k + 1:], n).ok:
            raise NotMinimal(f"member {k} can be dropped without losing a type")
    pres = presentation(words)
    c = len(pres.generators)
    for idx in combinations(range(len(words)), c):
        if rational_rank([pres.relators[k] for k in idx], c) == c:
            return idx
    raise NotMinimal("no sub-family spans the intervals in use")
