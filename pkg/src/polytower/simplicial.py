"""Finite simplicial complexes on the vertex set [m] = {1, ..., m}.

Complexes are stored as an explicit, downward-closed set of faces. Every
singleton {i} is required to be a face, and the empty face is always
present. Faces are sorted tuples of vertex ids.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed complexes or complex files."""


def _face_key(face: Simplex) -> tuple[int, Simplex]:
    return (len(face), face)


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    faces: frozenset[Simplex]
    # constructor that produced the complex, used only for certificates
    origin: str = field(default="facets", compare=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ComplexError(f"vertex count must be >= 1, got {self.m}")
        if () not in self.faces:
            raise ComplexError("complex must contain the empty face")
        for face in self.faces:
            if list(face) != sorted(set(face)):
                raise ComplexError(f"face {face} is not strictly increasing")
            if face and (face[0] < 1 or face[-1] > self.m):
                raise ComplexError(f"face {face} has a vertex outside 1..{self.m}")
        for i in range(1, self.m + 1):
            if (i,) not in self.faces:
                raise ComplexError(f"vertex {i} is missing from the complex")
        for face in self.faces:
            for j in range(len(face)):
                if face[:j] + face[j + 1:] not in self.faces:
                    raise ComplexError(f"face set is not downward closed at {face}")

    def sorted_faces(self) -> list[Simplex]:
        """Faces in canonical (cardinality, lex) order, empty face first."""
        return sorted(self.faces, key=_face_key)

    def faces_of_dim(self, d: int) -> list[Simplex]:
        return sorted(f for f in self.faces if len(f) == d + 1)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def facets(self) -> list[Simplex]:
        out = []
        for f in self.faces:
            fs = set(f)
            if not any(len(g) > len(f) and fs.issubset(g) for g in self.faces):
                out.append(f)
        return sorted(out, key=_face_key)

    def __contains__(self, face: object) -> bool:
        return tuple(sorted(face)) in self.faces  # type: ignore[arg-type]

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets()]}

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, f)) + "}" for f in self.facets())
        return f"K(m={self.m}; {body})"


def _closure(facets: Iterable[Iterable[int]], m: int) -> frozenset[Simplex]:
    faces: set[Simplex] = {()}
    faces.update((i,) for i in range(1, m + 1))
    for facet in facets:
        f = tuple(sorted(set(facet)))
        if f in faces:
            continue
        for r in range(1, len(f) + 1):
            faces.update(combinations(f, r))
    return frozenset(faces)


def from_facets(m: int, facets: Iterable[Iterable[int]], origin: str = "facets") -> SimplicialComplex:
    """Downward closure of ``facets`` plus every vertex of [m]."""
    if m < 1:
        raise ComplexError(f"vertex count must be >= 1, got {m}")
    facets = [tuple(f) for f in facets]
    for f in facets:
        for v in f:
            if not 1 <= v <= m:
                raise ComplexError(f"vertex id {v} out of range 1..{m}")
    return SimplicialComplex(m, _closure(facets, m), origin)


def skeleton(m: int, k: int) -> SimplicialComplex:
    """The k-skeleton of the (m-1)-simplex: all subsets of size <= k+1."""
    if m < 1:
        raise ComplexError(f"vertex count must be >= 1, got {m}")
    if not -1 <= k <= m - 1:
        raise ComplexError(f"skeleton dimension {k} outside -1..{m - 1}")
    # sk_{-1} would omit the vertices, which a complex here may not do
    if k == -1:
        raise ComplexError("sk_{-1} contains no vertices; every vertex must be a face")
    faces = frozenset(f for r in range(k + 2) for f in combinations(range(1, m + 1), r))
    return SimplicialComplex(m, faces, "skeleton")


def full_simplex(m: int) -> SimplicialComplex:
    return skeleton(m, m - 1)


def boundary_of_simplex(m: int) -> SimplicialComplex:
    """The boundary of the (m-1)-simplex, built from facets (m >= 2)."""
    if m < 2:
        raise ComplexError("the boundary of a 0-simplex has no vertices")
    return from_facets(m, combinations(range(1, m + 1), m - 1))


def _check_subset(K: SimplicialComplex, I: Sequence[int]) -> Simplex:
    I = tuple(sorted(set(I)))
    if not I:
        raise ComplexError("index set I must be nonempty")
    if I[0] < 1 or I[-1] > K.m:
        raise ComplexError(f"index set {I} not contained in 1..{K.m}")
    return I


def faces_within(K: SimplicialComplex, I: Sequence[int]) -> frozenset[Simplex]:
    """Faces of K contained in I, in the original vertex labels."""
    Iset = set(_check_subset(K, I))
    return frozenset(f for f in K.faces if Iset.issuperset(f))


def full_subcomplex(K: SimplicialComplex, I: Sequence[int]) -> SimplicialComplex:
    """K_I, relabelled onto [|I|] preserving the vertex order of I."""
    I = _check_subset(K, I)
    relabel = {v: j + 1 for j, v in enumerate(I)}
    faces = frozenset(tuple(relabel[v] for v in f) for f in faces_within(K, I))
    return SimplicialComplex(len(I), faces)


def is_full_simplex(K: SimplicialComplex) -> bool:
    return tuple(range(1, K.m + 1)) in K.faces


def minimal_missing_faces(K: SimplicialComplex) -> list[Simplex]:
    """Non-faces all of whose proper subsets are faces, in (cardinality, lex) order."""
    out = []
    # a minimal non-face minus any vertex is a face, so extend faces by one vertex
    candidates = {tuple(sorted(f + (v,))) for f in K.faces for v in range(1, K.m + 1) if v not in f}
    for c in candidates:
        if c in K.faces:
            continue
        if all(c[:j] + c[j + 1:] in K.faces for j in range(len(c))):
            out.append(c)
    return sorted(out, key=_face_key)


def is_shifted(K: SimplicialComplex) -> bool:
    """Shiftedness with respect to the standard order on [m]."""
    for face in K.faces:
        fs = set(face)
        for i in face:
            for j in range(i + 1, K.m + 1):
                if j in fs:
                    continue
                if tuple(sorted((fs - {i}) | {j})) not in K.faces:
                    return False
    return True


class Certificate(str, enum.Enum):
    SKELETON = "SkeletonOfSimplex"
    SHIFTED = "Shifted"
    USER = "UserAsserted"
    UNKNOWN = "Unknown"


def fwf_trivial_certificate(K: SimplicialComplex, assume_flag: bool = False) -> Certificate:
    """Strongest known reason for the fat wedge filtration of K to be trivial.

    Skeleta are recognized by their constructor, not by face set.
    """
    if K.origin == "skeleton":
        return Certificate.SKELETON
    if is_shifted(K):
        return Certificate.SHIFTED
    if assume_flag:
        return Certificate.USER
    return Certificate.UNKNOWN


def parse_complex(text: str) -> SimplicialComplex:
    """Parse the ``m=<int>`` + one-facet-per-line format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ComplexError("empty complex file")
    head = lines[0].replace(" ", "")
    if not head.startswith("m="):
        raise ComplexError(f"first line must be 'm=<int>', got {lines[0]!r}")
    try:
        m = int(head[2:])
        facets = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ComplexError(f"non-integer token: {exc}") from None
    return from_facets(m, facets)


def load_complex(path: str) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


def format_complex(K: SimplicialComplex) -> str:
    lines = [f"m={K.m}"] + [" ".join(map(str, f)) for f in K.facets()]
    return "\n".join(lines) + "\n"


def complex_json(K: SimplicialComplex) -> str:
    return json.dumps(K.to_json(), separators=(",", ":"), sort_keys=True)


def all_complexes(m: int) -> list[SimplicialComplex]:
    """Every complex on [m] containing all vertices (practical for m <= 4)."""
    subsets = [s for r in range(2, m + 1) for s in combinations(range(1, m + 1), r)]
    base = {()} | {(i,) for i in range(1, m + 1)}
    out: list[SimplicialComplex] = []

    def rec(idx: int, faces: set[Simplex]) -> None:
        if idx == len(subsets):
            out.append(SimplicialComplex(m, frozenset(faces)))
            return
        s = subsets[idx]
        rec(idx + 1, faces)
        if all(s[:j] + s[j + 1:] in faces for j in range(len(s))):
            faces.add(s)
            rec(idx + 1, faces)
            faces.discard(s)

    rec(0, set(base))
    return out
