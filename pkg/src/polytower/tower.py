"""Factor enumeration for the Goodwillie towers of polyhedral products.

Each decomposition is a product of loop spaces on P_kappa(id) applied to a
space Sigma w(alpha)(X), one for every Hall word w over a generator
alphabet, plus (for the multi- and single-variable variants) one factor
P_{n_i}(id)(Sigma X_i) per vertex. Inputs are spheres X_i = S^{d_i}, so a
factor's space is formally

    Sigma^1 |K_{I_1}| ^ ... ^ |K_{I_r}| ^ S^{sum_i a_i d_i}

and its reduced homology follows from the Kunneth formula. Only factors
with kappa >= 1 are reported; P_0(id) is constant at a point.

Hall words are pinned to the Lyndon basis. Generators are ordered by
(|I|, I, sum k, k).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .homology import GradedAbelianGroup, simplicial_homology, smash_homology, suspend
from .lie import Alphabet, EnumerationCapExceeded, HallWord, Letter, generate_lyndon, standard_bracketing
from .simplicial import (
    Certificate,
    SimplicialComplex,
    full_subcomplex,
    fwf_trivial_certificate,
    minimal_missing_faces,
)

DEFAULT_CAP = 10**6
VARIANTS = ("multi", "single", "cone", "bh")


class HypothesisError(ValueError):
    """The fat wedge filtration of K is not known to be trivial."""


@dataclass(frozen=True)
class GeneratorIndex:
    """A pair (I, k): the generator alpha_{I,k}, or beta_I when kind == 'beta'."""

    I: tuple[int, ...]
    k: tuple[int, ...]
    kind: str = "alpha"

    def __post_init__(self) -> None:
        if not self.I or list(self.I) != sorted(set(self.I)):
            raise ValueError(f"I must be a nonempty increasing tuple, got {self.I}")
        if len(self.k) != len(self.I) or min(self.k) < 1:
            raise ValueError(f"k must have one entry >= 1 per element of I, got {self.k}")
        if self.kind == "beta" and set(self.k) != {1}:
            raise ValueError("beta generators carry k = (1, ..., 1)")

    @classmethod
    def beta(cls, I: Sequence[int]) -> "GeneratorIndex":
        I = tuple(I)
        return cls(I, (1,) * len(I), "beta")

    def multidegree(self, m: int) -> tuple[int, ...]:
        """b(I, k): the smash power of each X_i in the generator."""
        b = [0] * m
        for i, ki in zip(self.I, self.k):
            b[i - 1] = ki
        return tuple(b)

    def sort_key(self) -> tuple:
        return (len(self.I), self.I, sum(self.k), self.k)

    def label(self) -> str:
        I = _subscript(self.I)
        if self.kind == "beta":
            return f"β_{I}"
        return f"α_{I};{','.join(map(str, self.k))}"

    def to_json(self) -> dict:
        return {"I": list(self.I), "k": list(self.k)}


@lru_cache(maxsize=None)
def _subscript(I: tuple[int, ...]) -> str:
    return "".join(map(str, I)) if max(I) < 10 else ",".join(map(str, I))


@dataclass(frozen=True)
class SpaceSpec:
    """Input spheres X_i = S^{d_i}; the decompositions consume Sigma X_i."""

    dims: tuple[int, ...]
    pre_suspended: bool = True

    def __post_init__(self) -> None:
        if not self.dims or min(self.dims) < 1:
            raise ValueError("every sphere dimension must be >= 1")

    @classmethod
    def uniform(cls, m: int, d: int = 1) -> "SpaceSpec":
        return cls((d,) * m)


@dataclass(frozen=True)
class SmashWord:
    """Sigma^shift of |K_{I_1}| ^ ... ^ |K_{I_r}| smashed with X_i^{a_i}."""

    complexes: tuple[tuple[int, ...], ...]
    a: tuple[int, ...]
    shift: int = 0

    def sphere_degree(self, spec: SpaceSpec) -> int:
        return sum(ai * di for ai, di in zip(self.a, spec.dims))

    def render(self, spec: SpaceSpec) -> str:
        parts = [f"|K_{{{_subscript(I)}}}|" for I in self.complexes]
        parts.append(f"S^{self.sphere_degree(spec)}")
        body = "∧".join(parts)
        return f"Σ^{self.shift} {body}" if self.shift else body


@lru_cache(maxsize=4096)
def _subcomplex_homology(K: SimplicialComplex, I: tuple[int, ...]) -> GradedAbelianGroup:
    return simplicial_homology(full_subcomplex(K, I))


@lru_cache(maxsize=65536)
def _smash_homology_cached(
    K: SimplicialComplex, complexes: tuple[tuple[int, ...], ...], degree: int, shift: int
) -> GradedAbelianGroup:
    G = GradedAbelianGroup.sphere(degree)
    for I in complexes:
        G = smash_homology(G, _subcomplex_homology(K, I))
    return suspend(G, shift)


def smash_word_homology(sw: SmashWord, K: SimplicialComplex, spec: SpaceSpec) -> GradedAbelianGroup:
    """Reduced homology of the smash word via the Kunneth formula."""
    return _smash_homology_cached(K, tuple(sorted(sw.complexes)), sw.sphere_degree(spec), sw.shift)


@lru_cache(maxsize=1024)
def _missing_faces(K: SimplicialComplex) -> frozenset[tuple[int, ...]]:
    return frozenset(minimal_missing_faces(K))


def smash_word_sphere_dim(sw: SmashWord, K: SimplicialComplex, spec: SpaceSpec) -> int | None:
    """Dimension of the space when every |K_I| is a boundary-of-simplex sphere."""
    missing = _missing_faces(K)
    if not all(I in missing for I in sw.complexes):
        return None
    return sw.shift + sum(len(I) - 2 for I in sw.complexes) + sw.sphere_degree(spec)


def alpha_space(g: GeneratorIndex, K: SimplicialComplex, spec: SpaceSpec) -> SmashWord:
    if g.I[-1] > K.m:
        raise ValueError(f"generator {g.label()} uses vertices outside 1..{K.m}")
    return SmashWord((g.I,), g.multidegree(K.m), 0)


def word_space(letters: Sequence[GeneratorIndex], m: int, shift: int = 1) -> SmashWord:
    """The (suspended) smash word of a Hall word: brackets act as smash."""
    a = [0] * m
    for g in letters:
        for i, ki in zip(g.I, g.k):
            a[i - 1] += ki
    return SmashWord(tuple(g.I for g in letters), tuple(a), shift)


def kappa_multi(n: Sequence[int], a: Sequence[int]) -> int:
    """min over variables present in the word of floor(n_i / a_i)."""
    if len(n) != len(a):
        raise ValueError("n and a must have the same length")
    present = [(ni, ai) for ni, ai in zip(n, a) if ai >= 1]
    if not present:
        raise ValueError("the smash multidegree must be nonzero")
    return min(ni // ai for ni, ai in present)


def kappa_single(n: int, a: Sequence[int]) -> int:
    total = sum(a)
    if total < 1:
        raise ValueError("the smash multidegree must be nonzero")
    return n // total


@dataclass(frozen=True)
class Factor:
    word: HallWord
    generators: tuple[GeneratorIndex, ...]  # the letters, in word order
    smash: SmashWord
    kappa: int
    space: str
    homology: GradedAbelianGroup
    sphere_dim: int | None
    null: bool = False

    @property
    def a(self) -> tuple[int, ...]:
        return self.smash.a

    def distinct_generators(self) -> list[GeneratorIndex]:
        return sorted(set(self.generators), key=GeneratorIndex.sort_key)

    def word_text(self) -> str:
        names = {g: f"g{j + 1}" for j, g in enumerate(self.distinct_generators())}
        letters = self.word.alphabet.letters
        return self.word.render(lambda i: names[letters[i].label])

    def word_labels(self) -> str:
        return self.word.render(lambda i: self.word.alphabet.letters[i].label.label())

    def to_json(self) -> dict:
        out = {
            "word": self.word_text(),
            "generators": [g.to_json() for g in self.distinct_generators()],
            "a": list(self.a),
            "kappa": self.kappa,
            "length": self.word.length,
            "space": self.space,
            "homology": self.homology.to_json(),
            "sphere": self.sphere_dim is not None,
            "sphere_dim": self.sphere_dim,
        }
        if self.null:
            out["null"] = True
        return out


@dataclass(frozen=True)
class ProductFactor:
    variable: int
    degree: int
    sphere_dim: int  # dimension of Sigma X_i

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "degree": self.degree,
            "space": f"S^{self.sphere_dim}",
            "sphere_dim": self.sphere_dim,
        }


@dataclass
class Enumeration:
    """Factors from one run, plus bookkeeping about the search."""

    factors: list[Factor]
    generators: int
    words_examined: int
    dropped_kappa_zero: int
    max_length: int
    bound: tuple[int, ...]
    extra: dict = field(default_factory=dict)

    def metadata(self) -> dict:
        out = {
            "generators": self.generators,
            "words_examined": self.words_examined,
            "dropped_kappa_zero": self.dropped_kappa_zero,
            "max_word_length": self.max_length,
            "enumeration_bound": list(self.bound),
        }
        out.update(self.extra)
        return out


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("PP_THREADS", "1")))
    except ValueError:
        return 1


def require_certificate(K: SimplicialComplex, assume_trivial_fwf: bool) -> Certificate:
    cert = fwf_trivial_certificate(K, assume_trivial_fwf)
    if cert is Certificate.UNKNOWN:
        raise HypothesisError(
            "fat wedge filtration not certified trivial (not shifted, not a skeleton); "
            "pass assume_trivial_fwf to proceed"
        )
    return cert


def _subsets(m: int) -> list[tuple[int, ...]]:
    return [c for r in range(1, m + 1) for c in combinations(range(1, m + 1), r)]


def _enumerate(
    K: SimplicialComplex,
    spec: SpaceSpec,
    gens: list[GeneratorIndex],
    weights: list[tuple[int, ...]],
    bound: tuple[int, ...],
    caps: list[int],
    kappa_fn,
    cap: int,
    workers: int | None,
) -> Enumeration:
    if len(spec.dims) != K.m:
        raise ValueError(f"need {K.m} sphere dimensions, got {len(spec.dims)}")
    if len(gens) > cap:
        raise EnumerationCapExceeded(
            f"{len(gens)} generators exceed the safety cap {cap}; raise the cap to continue"
        )
    order = sorted(range(len(gens)), key=lambda j: gens[j].sort_key())
    gens = [gens[j] for j in order]
    weights = [weights[j] for j in order]
    caps = [caps[j] for j in order]
    alphabet = Alphabet(tuple(Letter(g, g.multidegree(K.m)) for g in gens))
    max_length = sum(caps) if caps else 0
    kept: list[tuple[HallWord, tuple[GeneratorIndex, ...], SmashWord, int]] = []
    examined = dropped = 0
    for w in generate_lyndon(len(gens), max_length, weights, bound, caps, cap):
        examined += 1
        letters = tuple(gens[i] for i in w)
        sw = word_space(letters, K.m)
        kappa = kappa_fn(letters, sw)
        if kappa < 1:
            dropped += 1
            continue
        kept.append((standard_bracketing(w, alphabet), letters, sw, kappa))

    def build(item) -> Factor:
        hw, letters, sw, kappa = item
        return Factor(
            word=hw,
            generators=letters,
            smash=sw,
            kappa=kappa,
            space=sw.render(spec),
            homology=smash_word_homology(sw, K, spec),
            sphere_dim=smash_word_sphere_dim(sw, K, spec),
            null=any(g.I in K.faces for g in letters),
        )

    nw = _workers(workers)
    if nw > 1 and len(kept) > 1:
        with ThreadPoolExecutor(nw) as ex:
            factors = list(ex.map(build, kept))
    else:
        factors = [build(x) for x in kept]
    factors.sort(key=lambda f: (sum(f.a), f.word.length, f.word.letters))
    return Enumeration(factors, len(gens), examined, dropped, max_length, bound)


def _check_indexing(indexing: str) -> None:
    if indexing not in ("K", "m"):
        raise ValueError("indexing must be 'K' (restricted) or 'm' (all pairs)")


def generator_alphabet(
    K: SimplicialComplex, degree_caps: Sequence[int], indexing: str = "K"
) -> list[GeneratorIndex]:
    """All alpha_{I,k} with k_i <= degree_caps[i] and (for indexing 'K') I not in K."""
    _check_indexing(indexing)
    if len(degree_caps) != K.m:
        raise ValueError(f"need {K.m} degree caps")
    out = []
    for I in _subsets(K.m):
        if indexing == "K" and I in K.faces:
            continue
        ranges = [range(1, degree_caps[i - 1] + 1) for i in I]
        out.extend(GeneratorIndex(I, k) for k in product(*ranges))
    return sorted(out, key=GeneratorIndex.sort_key)


def enumerate_factors_multi(
    K: SimplicialComplex,
    n: Sequence[int],
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    indexing: str = "K",
    bound_scale: int = 1,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Enumeration:
    """Lie factors of the multivariable decomposition, kappa >= 1 only.

    A generator is potentially nonzero iff k_i <= n_i on I; letter (I, k) can
    occur at most max_{i in I} floor(n_i / k_i) times. ``bound_scale``
    widens both limits (k_i <= s n_i, caps from s n) past that certified
    region. The search itself is pruned where kappa of a prefix is already 0,
    which is sound since kappa never increases as a word grows.
    """
    require_certificate(K, assume_trivial_fwf)
    n = tuple(n)
    if len(n) != K.m or min(n) < 0:
        raise ValueError(f"multi-index must have {K.m} entries >= 0")
    B = tuple(bound_scale * x for x in n)
    gens = generator_alphabet(K, B, indexing)
    weights = [g.multidegree(K.m) for g in gens]
    caps = [max(B[i - 1] // ki for i, ki in zip(g.I, g.k)) for g in gens]
    # kappa >= 1 exactly when a <= n componentwise
    return _enumerate(
        K, spec, gens, weights, n, caps,
        lambda letters, sw: kappa_multi(n, sw.a), cap, workers,
    )


def _check_uniform(spec: SpaceSpec) -> None:
    if len(set(spec.dims)) != 1:
        raise ValueError("single-variable calculus needs equal sphere dimensions")


def enumerate_factors_single(
    K: SimplicialComplex,
    n: int,
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    indexing: str = "K",
    bound_scale: int = 1,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Enumeration:
    """Lie factors of the diagonal decomposition: kappa = floor(n / sum a_i)."""
    require_certificate(K, assume_trivial_fwf)
    _check_uniform(spec)
    _check_indexing(indexing)
    if n < 0:
        raise ValueError("n must be >= 0")
    B = bound_scale * n
    gens = []
    for I in _subsets(K.m):
        if indexing == "K" and I in K.faces:
            continue
        for k in product(range(1, B + 1), repeat=len(I)):
            if sum(k) <= B:
                gens.append(GeneratorIndex(I, k))
    weights = [(sum(g.k),) for g in gens]
    caps = [B // sum(g.k) for g in gens]
    return _enumerate(
        K, spec, gens, weights, (n,), caps,
        lambda letters, sw: kappa_single(n, sw.a), cap, workers,
    )


def _beta_generators(K: SimplicialComplex, support: Sequence[int], indexing: str) -> list[GeneratorIndex]:
    _check_indexing(indexing)
    out = []
    for I in _subsets(K.m):
        if indexing == "K" and I in K.faces:
            continue
        if all(support[i - 1] >= 1 for i in I):
            out.append(GeneratorIndex.beta(I))
    return out


def cone_factors(
    K: SimplicialComplex,
    n: Sequence[int],
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    indexing: str = "K",
    bound_scale: int = 1,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Enumeration:
    """Factors of the calculus of (CX, X)^K over the beta_I alphabet."""
    require_certificate(K, assume_trivial_fwf)
    n = tuple(n)
    if len(n) != K.m or min(n) < 0:
        raise ValueError(f"multi-index must have {K.m} entries >= 0")
    B = tuple(bound_scale * x for x in n)
    gens = _beta_generators(K, B, indexing)
    weights = [g.multidegree(K.m) for g in gens]
    caps = [max(B[i - 1] for i in g.I) for g in gens]
    return _enumerate(
        K, spec, gens, weights, n, caps,
        lambda letters, sw: kappa_multi(n, sw.a), cap, workers,
    )


def cone_factors_single(
    K: SimplicialComplex,
    n: int,
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Enumeration:
    """Cone decomposition on the diagonal: kappa = floor(n / sum a_i)."""
    require_certificate(K, assume_trivial_fwf)
    gens = _beta_generators(K, (n,) * K.m, "K")
    weights = [(len(g.I),) for g in gens]
    caps = [n // len(g.I) for g in gens]
    return _enumerate(
        K, spec, gens, weights, (n,), caps,
        lambda letters, sw: kappa_single(n, sw.a), cap, workers,
    )


def bh_identity_factors(
    K: SimplicialComplex,
    n: int,
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    bound_scale: int = 1,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Enumeration:
    """P_n(id) on (CX, X)^K: word w gets degree floor(n / |w|)."""
    require_certificate(K, assume_trivial_fwf)
    if n < 0:
        raise ValueError("n must be >= 0")
    B = bound_scale * n
    gens = _beta_generators(K, (1,) * K.m, "K")
    weights = [(1,)] * len(gens)
    caps = [B] * len(gens)
    return _enumerate(
        K, spec, gens, weights, (n,), caps,
        lambda letters, sw: n // len(letters), cap, workers,
    )


def wedge_bh_factors(
    m: int, n: int, spec: SpaceSpec, *, cap: int = DEFAULT_CAP, workers: int | None = None
) -> Enumeration:
    """P_n(id) on Sigma X_1 v ... v Sigma X_m via Hall words in m letters.

    Letter i stands for X_i itself, so the factor space is Sigma w(X).
    """
    gens = [GeneratorIndex((i,), (1,)) for i in range(1, m + 1)]
    # on m points every singleton is a face, so use a complex-free path
    K = SimplicialComplex(m, frozenset({()} | {(i,) for i in range(1, m + 1)}))
    alphabet = Alphabet(tuple(Letter(g, g.multidegree(m)) for g in gens))
    factors = []
    examined = 0
    for w in generate_lyndon(m, n, cap=cap):
        examined += 1
        letters = tuple(gens[i] for i in w)
        a = [0] * m
        for g in letters:
            a[g.I[0] - 1] += 1
        sw = SmashWord((), tuple(a), 1)
        factors.append(
            Factor(
                word=standard_bracketing(w, alphabet),
                generators=letters,
                smash=sw,
                kappa=n // len(w),
                space=sw.render(spec),
                homology=smash_word_homology(sw, K, spec),
                sphere_dim=sw.shift + sw.sphere_degree(spec),
            )
        )
    factors.sort(key=lambda f: (sum(f.a), f.word.length, f.word.letters))
    return Enumeration(factors, m, examined, 0, n, (n,))


@dataclass(frozen=True)
class ComparisonRow:
    word: str
    a: tuple[int, ...]
    length: int
    kappa_cone: int
    kappa_bh: int

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "a": list(self.a),
            "length": self.length,
            "kappa_cone": self.kappa_cone,
            "kappa_bh": self.kappa_bh,
        }


def degree_comparison(
    K: SimplicialComplex,
    n: int,
    spec: SpaceSpec,
    *,
    assume_trivial_fwf: bool = False,
    cap: int = DEFAULT_CAP,
) -> list[ComparisonRow]:
    """Both degrees for every word of the cone (diagonal) and identity lists."""
    cone = cone_factors_single(K, n, spec, assume_trivial_fwf=assume_trivial_fwf, cap=cap)
    bh = bh_identity_factors(K, n, spec, assume_trivial_fwf=assume_trivial_fwf, cap=cap)
    rows: dict[tuple, ComparisonRow] = {}
    for f in cone.factors + bh.factors:
        key = tuple(g.I for g in f.generators)
        if key in rows:
            continue
        rows[key] = ComparisonRow(
            word=f.word_labels(),
            a=f.a,
            length=f.word.length,
            kappa_cone=kappa_single(n, f.a),
            kappa_bh=n // f.word.length,
        )
    return sorted(rows.values(), key=lambda r: (sum(r.a), r.length, r.word))


def product_factors(n: Sequence[int], spec: SpaceSpec) -> list[ProductFactor]:
    """One factor P_{n_i}(id)(Sigma X_i) per vertex."""
    if len(n) != len(spec.dims):
        raise ValueError("multi-index and sphere dimensions differ in length")
    return [ProductFactor(i + 1, ni, spec.dims[i] + 1) for i, ni in enumerate(n)]


@dataclass
class Decomposition:
    variant: str
    lie_factors: list[Factor]
    product_factors: list[ProductFactor]
    metadata: dict

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "lie_factors": [f.to_json() for f in self.lie_factors],
            "product_factors": [p.to_json() for p in self.product_factors],
            "metadata": self.metadata,
        }


def full_decomposition(
    K: SimplicialComplex,
    n: int | Sequence[int],
    spec: SpaceSpec,
    variant: str = "multi",
    *,
    assume_trivial_fwf: bool = False,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> Decomposition:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    cert = require_certificate(K, assume_trivial_fwf)
    kw = dict(assume_trivial_fwf=assume_trivial_fwf, cap=cap, workers=workers)
    if variant in ("multi", "cone"):
        nvec = (n,) * K.m if isinstance(n, int) else tuple(n)
        fn = enumerate_factors_multi if variant == "multi" else cone_factors
        run = fn(K, nvec, spec, **kw)
        prods = product_factors(nvec, spec) if variant == "multi" else []
        n_out: object = list(nvec)
    else:
        if not isinstance(n, int):
            raise ValueError(f"variant {variant!r} takes a single integer n")
        fn = enumerate_factors_single if variant == "single" else bh_identity_factors
        run = fn(K, n, spec, **kw)
        prods = product_factors((n,) * K.m, spec) if variant == "single" else []
        n_out = n
    meta = {
        "certificate": cert.value,
        "m": K.m,
        "n": n_out,
        "dims": list(spec.dims),
        "hall_basis": "lyndon",
        "generator_order": "(|I|, I, sum k, k)",
        "factor_order": "(sum a, length, lex)",
    }
    meta.update(run.metadata())
    return Decomposition(variant, run.factors, prods, meta)
