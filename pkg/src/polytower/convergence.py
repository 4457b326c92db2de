"""Convergence classification and periodic-divergence witnesses.

A complex with a trivial fat wedge filtration converges integrally; unless
it is the full simplex, its v_h-periodic tower diverges on spheres. The
witnesses reported here are the combinatorial family behind that claim:
Hall words on the generators alpha_{I0,k} for a minimal missing face I0.
Each such word gives a sphere Sigma w(alpha)(X). No periodic homotopy is
computed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

from .lie import Alphabet, Letter, generate_lyndon, standard_bracketing
from .simplicial import (
    Certificate,
    Simplex,
    SimplicialComplex,
    fwf_trivial_certificate,
    is_full_simplex,
    minimal_missing_faces,
)
from .tower import GeneratorIndex, SpaceSpec

WITNESS_NOTE = "combinatorial witness family; periodic homotopy is not computed"


class Classification(str, enum.Enum):
    CONVERGES = "ConvergesEverywhere"
    DIVERGES = "IntegralConvergesVhDiverges"
    OUTSIDE = "OutsideHypotheses"


@dataclass(frozen=True)
class ConvergenceReport:
    classification: Classification
    certificate: Certificate
    witness_face: Simplex | None

    def to_json(self) -> dict:
        return {
            "classification": self.classification.value,
            "certificate": self.certificate.value,
            "witness_face": list(self.witness_face) if self.witness_face else None,
        }


def classify(K: SimplicialComplex, assume_trivial_fwf: bool = False) -> ConvergenceReport:
    cert = fwf_trivial_certificate(K, assume_trivial_fwf)
    if is_full_simplex(K):
        return ConvergenceReport(Classification.CONVERGES, cert, None)
    if cert is Certificate.UNKNOWN:
        return ConvergenceReport(Classification.OUTSIDE, cert, None)
    return ConvergenceReport(Classification.DIVERGES, cert, minimal_missing_faces(K)[0])


@dataclass(frozen=True)
class Witness:
    word: str
    generators: tuple[GeneratorIndex, ...]  # letters in word order
    sphere_dim: int

    def to_json(self) -> dict:
        distinct = sorted(set(self.generators), key=GeneratorIndex.sort_key)
        return {
            "word": self.word,
            "generators": [g.to_json() for g in distinct],
            "sphere_dim": self.sphere_dim,
        }


def witness_dimension(I0: Simplex, letters, spec: SpaceSpec) -> int:
    """1 plus, per letter, the sphere |K_I0| and the smash of the X_i powers."""
    return 1 + sum((len(I0) - 2) + sum(k * spec.dims[i - 1] for i, k in zip(I0, g.k)) for g in letters)


def divergence_witnesses(K: SimplicialComplex, spec: SpaceSpec, count: int) -> list[Witness]:
    """The first ``count`` witness words in (total smash degree, length, lex) order."""
    if is_full_simplex(K):
        raise ValueError("the full simplex has no missing face; its tower converges")
    if count < 0:
        raise ValueError("count must be >= 0")
    if len(spec.dims) != K.m:
        raise ValueError(f"need {K.m} sphere dimensions")
    I0 = minimal_missing_faces(K)[0]
    out: list[Witness] = []
    total = len(I0)
    while len(out) < count:
        # every word of smash degree `total` uses generators with sum k <= total
        gens = [
            GeneratorIndex(I0, k)
            for k in product(range(1, total + 1), repeat=len(I0))
            if sum(k) <= total
        ]
        gens.sort(key=GeneratorIndex.sort_key)
        alphabet = Alphabet(tuple(Letter(g, g.multidegree(K.m)) for g in gens))
        weights = [(sum(g.k),) for g in gens]
        layer = []
        for w in generate_lyndon(len(gens), total // len(I0), weights, (total,)):
            if sum(weights[i][0] for i in w) != total:
                continue
            layer.append(w)
        layer.sort(key=lambda w: (len(w), w))
        for w in layer:
            hw = standard_bracketing(w, alphabet)
            letters = tuple(gens[i] for i in w)
            text = hw.render(lambda i: gens[i].label())
            out.append(Witness(text, letters, witness_dimension(I0, letters, spec)))
            if len(out) == count:
                break
        total += 1
    return out
