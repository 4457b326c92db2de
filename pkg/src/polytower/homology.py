"""Exact integral homology of simplicial and cubical complexes.

All group data is kept in invariant-factor form: a free rank plus a
torsion chain t_1 | t_2 | ... with every t_i >= 2. Boundary matrices are
stored sparsely (one dict per basis element) and reduced with a Smith
normal form over Python integers, so intermediate growth never overflows.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

from .simplicial import SimplicialComplex, full_subcomplex

SparseVec = dict[int, int]


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical torsion chain for a direct sum of cyclic groups Z/o."""
    vals = [abs(o) for o in orders if abs(o) > 1]
    # pairwise (gcd, lcm) sweeps turn any diagonal into a divisibility chain
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            g = gcd(a, b)
            vals[i], vals[j] = g, a // g * b
    return tuple(v for v in vals if v > 1)


@dataclass(frozen=True)
class GradedAbelianGroup:
    """Finitely supported graded group; ``data`` holds (degree, rank, torsion)."""

    data: tuple[tuple[int, int, tuple[int, ...]], ...] = ()

    @classmethod
    def from_dict(cls, groups: Mapping[int, tuple[int, Sequence[int]]]) -> "GradedAbelianGroup":
        items = []
        for deg, (rank, torsion) in groups.items():
            if rank < 0:
                raise ValueError("rank must be non-negative")
            tors = invariant_factors(torsion)
            if rank or tors:
                items.append((int(deg), int(rank), tors))
        return cls(tuple(sorted(items)))

    @classmethod
    def sphere(cls, dim: int) -> "GradedAbelianGroup":
        """Reduced homology of S^dim."""
        return cls(((dim, 1, ()),))

    @classmethod
    def zero(cls) -> "GradedAbelianGroup":
        return cls(())

    def degrees(self) -> list[int]:
        return [d for d, _, _ in self.data]

    def rank(self, d: int) -> int:
        for deg, r, _ in self.data:
            if deg == d:
                return r
        return 0

    def torsion(self, d: int) -> tuple[int, ...]:
        for deg, _, t in self.data:
            if deg == d:
                return t
        return ()

    def is_zero(self) -> bool:
        return not self.data

    def total_rank(self) -> int:
        return sum(r for _, r, _ in self.data)

    def is_free(self) -> bool:
        return all(not t for _, _, t in self.data)

    def __add__(self, other: "GradedAbelianGroup") -> "GradedAbelianGroup":
        acc: dict[int, tuple[int, list[int]]] = {}
        for deg, r, t in self.data + other.data:
            r0, t0 = acc.get(deg, (0, []))
            acc[deg] = (r0 + r, t0 + list(t))
        return GradedAbelianGroup.from_dict(acc)

    def to_json(self) -> dict:
        return {
            "degrees": {
                str(d): {"rank": r, "torsion": list(t)} for d, r, t in self.data
            }
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GradedAbelianGroup":
        return cls.from_dict(
            {int(d): (v["rank"], v["torsion"]) for d, v in obj["degrees"].items()}
        )

    def __str__(self) -> str:
        if not self.data:
            return "0"
        parts = []
        for d, r, t in self.data:
            summands = ([f"Z^{r}" if r > 1 else "Z"] if r else []) + [f"Z/{x}" for x in t]
            parts.append(f"H{d}=" + "+".join(summands))
        return " ".join(parts)


def direct_sum(groups: Iterable[GradedAbelianGroup]) -> GradedAbelianGroup:
    return reduce(lambda a, b: a + b, groups, GradedAbelianGroup.zero())


def suspend(G: GradedAbelianGroup, t: int = 1) -> GradedAbelianGroup:
    if t < 0:
        raise ValueError("suspension shift must be >= 0")
    return GradedAbelianGroup(tuple((d + t, r, tor) for d, r, tor in G.data))


def smash_homology(A: GradedAbelianGroup, B: GradedAbelianGroup) -> GradedAbelianGroup:
    """Reduced Kunneth formula for a smash product, Tor terms included."""
    acc: dict[int, tuple[int, list[int]]] = {}

    def put(deg: int, rank: int, tors: list[int]) -> None:
        r0, t0 = acc.get(deg, (0, []))
        acc[deg] = (r0 + rank, t0 + tors)

    for p, ra, ta in A.data:
        for q, rb, tb in B.data:
            # tensor: Z^ra (+) T_a  with  Z^rb (+) T_b
            tens = [x for x in ta for _ in range(rb)] + [y for y in tb for _ in range(ra)]
            tens += [gcd(x, y) for x in ta for y in tb]
            put(p + q, ra * rb, tens)
            tor = [gcd(x, y) for x in ta for y in tb]
            if tor:
                put(p + q + 1, 0, tor)
    return GradedAbelianGroup.from_dict(acc)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_diagonal(vectors: Sequence[SparseVec]) -> list[int]:
    """Nonzero invariant factors of the matrix whose rows are ``vectors``.

    Returns the SNF diagonal d_1 | d_2 | ... (all positive); its length is
    the rank. Works on copies, inputs are not modified.
    """
    rows = [dict(v) for v in vectors if v]
    rows = [{c: x for c, x in r.items() if x} for r in rows]
    rows = [r for r in rows if r]
    diag: list[int] = []
    while rows:
        # pivot: a unit in the sparsest row if possible, else the smallest entry
        best = None
        for ri, r in enumerate(rows):
            for c, x in r.items():
                key = (abs(x), len(r))
                if best is None or key < best[0]:
                    best = (key, ri, c)
            if best is not None and best[0] == (1, 1):
                break
        _, pr, pc = best
        while True:
            p = rows[pr][pc]
            # clear column pc in the other rows by row operations
            rem = None
            for ri, r in enumerate(rows):
                if ri == pr or pc not in r:
                    continue
                q = r[pc] // p
                for c, x in rows[pr].items():
                    v = r.get(c, 0) - q * x
                    if v:
                        r[c] = v
                    else:
                        r.pop(c, None)
                if pc in r and (rem is None or abs(r[pc]) < abs(rows[rem][pc])):
                    rem = ri
            if rem is not None:
                pr = rem
                continue
            # column pc is now zero off row pr, so column ops only touch row pr
            prow = rows[pr]
            remc = None
            for c in list(prow):
                if c == pc:
                    continue
                v = prow[c] - (prow[c] // p) * p
                if v:
                    prow[c] = v
                    if remc is None or abs(v) < abs(prow[remc]):
                        remc = c
                else:
                    del prow[c]
            if remc is None:
                break
            pc = remc
        diag.append(abs(rows[pr][pc]))
        del rows[pr]
        rows = [r for r in rows if r]
    return _chain(diag)


def _chain(diag: list[int]) -> list[int]:
    ones = sum(1 for d in diag if d == 1)
    rest = invariant_factors([d for d in diag if d != 1])
    # nontrivial entries that collapsed to 1 under gcd/lcm sweeps
    extra = len(diag) - ones - len(rest)
    return [1] * (ones + extra) + list(rest)


# ---------------------------------------------------------------------------
# Chain complexes


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PP_THREADS", "1")))
    except ValueError:
        return 1


class ChainComplex:
    """Free chain complex with sparse boundary maps.

    ``boundaries[d]`` lists, for each basis element of C_d, its boundary as
    a sparse vector over the basis of C_{d-1}. Degree -1 may be present to
    encode the augmentation. d(d(x)) = 0 is verified on construction.
    """

    def __init__(self, bases: Mapping[int, Sequence], boundaries: Mapping[int, Sequence[SparseVec]]):
        self.bases = {d: list(b) for d, b in bases.items()}
        self.boundaries = {d: [dict(v) for v in bs] for d, bs in boundaries.items()}
        for d, bs in self.boundaries.items():
            if len(bs) != len(self.bases.get(d, [])):
                raise ValueError(f"boundary in degree {d} does not match basis size")
            target = len(self.bases.get(d - 1, []))
            for v in bs:
                if any(not 0 <= i < target for i in v):
                    raise ValueError(f"boundary in degree {d} leaves C_{d - 1}")
        self._check_square_zero()

    def _check_square_zero(self) -> None:
        for d, bs in self.boundaries.items():
            lower = self.boundaries.get(d - 1)
            if lower is None:
                continue
            for v in bs:
                acc: SparseVec = {}
                for i, c in v.items():
                    for j, x in lower[i].items():
                        acc[j] = acc.get(j, 0) + c * x
                if any(acc.values()):
                    raise ValueError(f"boundary squares to nonzero in degree {d}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(b) for d, b in self.bases.items())

    def homology(self) -> GradedAbelianGroup:
        degs = sorted(self.bases)
        nw = _workers()
        todo = [d for d in degs if self.boundaries.get(d)]
        if nw > 1 and len(todo) > 1:
            with ThreadPoolExecutor(nw) as ex:
                snfs = dict(zip(todo, ex.map(lambda d: smith_diagonal(self.boundaries[d]), todo)))
        else:
            snfs = {d: smith_diagonal(self.boundaries[d]) for d in todo}
        groups = {}
        for d in degs:
            out_rank = len(snfs.get(d, []))
            incoming = snfs.get(d + 1, [])
            rank = len(self.bases[d]) - out_rank - len(incoming)
            groups[d] = (rank, [x for x in incoming if x > 1])
        return GradedAbelianGroup.from_dict(groups)


def simplicial_chain_complex(K: SimplicialComplex, reduced: bool = True) -> ChainComplex:
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for f in K.sorted_faces():
        if f or reduced:
            by_dim.setdefault(len(f) - 1, []).append(f)
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in by_dim.items()}
    boundaries = {}
    for d, fs in by_dim.items():
        if d - 1 not in by_dim:
            continue
        lower = index[d - 1]
        boundaries[d] = [
            {lower[f[:j] + f[j + 1:]]: (-1) ** j for j in range(len(f))} for f in fs
        ]
    return ChainComplex(by_dim, boundaries)


def simplicial_homology(K: SimplicialComplex) -> GradedAbelianGroup:
    """Reduced integral homology of K."""
    return simplicial_chain_complex(K, reduced=True).homology()


# ---------------------------------------------------------------------------
# Cubical complexes

Cell = str  # word over {'0', '1', '*'}


@dataclass(frozen=True)
class CubicalComplex:
    m: int
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        for w in self.cells:
            if len(w) != self.m or set(w) - {"0", "1", "*"}:
                raise ValueError(f"bad cell {w!r}")
            for i, ch in enumerate(w):
                if ch == "*":
                    for e in "01":
                        if w[:i] + e + w[i + 1:] not in self.cells:
                            raise ValueError(f"cubical complex not face-closed at {w!r}")

    def cells_of_dim(self, d: int) -> list[Cell]:
        return sorted(w for w in self.cells if w.count("*") == d)

    @property
    def dimension(self) -> int:
        return max((w.count("*") for w in self.cells), default=-1)


def real_moment_angle_complex(K: SimplicialComplex) -> CubicalComplex:
    """(D^1, S^0)^K as a subcomplex of the m-cube."""
    cells = set()
    for face in K.faces:
        free = set(face)
        rest = [i for i in range(1, K.m + 1) if i not in free]
        for bits in product("01", repeat=len(rest)):
            w = ["*"] * K.m
            for i, b in zip(rest, bits):
                w[i - 1] = b
            cells.add("".join(w))
    return CubicalComplex(K.m, frozenset(cells))


def cubical_chain_complex(C: CubicalComplex, reduced: bool = True) -> ChainComplex:
    if not C.cells:
        raise ValueError("empty cubical complex")
    top = C.dimension
    by_dim = {d: C.cells_of_dim(d) for d in range(top + 1)}
    index = {d: {w: i for i, w in enumerate(ws)} for d, ws in by_dim.items()}
    boundaries = {}
    for d in range(1, top + 1):
        lower = index[d - 1]
        cols = []
        for w in by_dim[d]:
            v: SparseVec = {}
            j = 0
            for i, ch in enumerate(w):
                if ch != "*":
                    continue
                sign = (-1) ** j
                v[lower[w[:i] + "1" + w[i + 1:]]] = sign
                v[lower[w[:i] + "0" + w[i + 1:]]] = -sign
                j += 1
            cols.append(v)
        boundaries[d] = cols
    if reduced:
        by_dim[-1] = [()]
        boundaries[0] = [{0: 1} for _ in by_dim[0]]
    return ChainComplex(by_dim, boundaries)


def cubical_homology(C: CubicalComplex) -> GradedAbelianGroup:
    """Reduced integral homology of a cubical complex."""
    return cubical_chain_complex(C, reduced=True).homology()


def wedge_splitting_homology(K: SimplicialComplex) -> GradedAbelianGroup:
    """Sum over nonempty I of H~_{*-1}(K_I)."""
    subsets = [
        tuple(i + 1 for i in range(K.m) if mask >> i & 1) for mask in range(1, 1 << K.m)
    ]
    return direct_sum(suspend(simplicial_homology(full_subcomplex(K, I)), 1) for I in subsets)
