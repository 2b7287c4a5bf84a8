"""Cockcroft certificates for presentations ``(x : r, s)`` with independent leading classes.

If every relator lies in ``F_n`` and their classes in ``F_n / F_{n+1}`` are
linearly independent, then ``R & S`` lies in ``[R,F] & [S,F]`` and in
``F_{n+1}``, and the model two-complex is Cockcroft.  An element ``mu`` of
``R & S`` then has a class in ``F_m / [R,S]F_{m+1}`` for ``m > n``; when
``2n >= m + 1`` that target is exactly ``F_m / F_{m+1}``, and a nonzero class
there is a nonobvious element of infinite order in ``H_3(F/RS)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intlin
from .magnus import (
    DEFAULT_DEGREE_BOUND,
    LieVector,
    WeightResult,
    lcs_weight,
    leading_lie_class,
    lyndon_basis,
    relator_class_matrix,
)
from .membership import MembershipEvidence, evidence_is_valid
from .presentation import Presentation
from .words import Word, WordError


class PropositionFailure(Exception):
    kind = "failure"


class UnequalWeights(PropositionFailure):
    kind = "unequal_weights"

    def __init__(self, weights: Sequence[WeightResult]):
        self.weights = tuple(weights)
        super().__init__(f"relator weights differ: {[str(w) for w in self.weights]}")


class Dependent(PropositionFailure):
    kind = "dependent"

    def __init__(self, n: int, matrix: list[list[int]], dependency: list[int]):
        self.n = n
        self.matrix = matrix
        self.dependency = dependency
        super().__init__(f"relator classes in degree {n} are dependent: {dependency} annihilates the rows")


class WeightExceedsBound(PropositionFailure):
    kind = "weight_exceeds_bound"

    def __init__(self, index: int, bound: int):
        self.index = index
        self.bound = bound
        super().__init__(f"relator {index} has weight above the degree bound {bound}")


class DetectionError(WordError):
    pass


class ConsistencyAlarm(AssertionError):
    """A verified member of ``R & S`` contradicts the certificate."""


@dataclass(frozen=True)
class CockcroftCertificate:
    presentation: Presentation
    n: int
    relator_weights: tuple[int, ...]
    class_matrix: tuple[tuple[int, ...], ...]
    independent: bool
    intersection_in_commutators: bool  # R & S  <=  [R,F] & [S,F]
    intersection_in_next_term: bool  # R & S  <=  F_{n+1}
    model_cockcroft: bool

    def __post_init__(self):
        if not self.independent:
            raise ValueError("a certificate requires independent relator classes")
        if any(w != self.n for w in self.relator_weights):
            raise ValueError("every relator weight must equal n")

    def to_dict(self) -> dict:
        names = self.presentation.alphabet.names
        return {
            "n": str(self.n),
            "relator_weights": [str(w) for w in self.relator_weights],
            "basis": ["".join(names[g] for g in w) for w in lyndon_basis(self.presentation.alphabet.rank, self.n)],
            "class_matrix": [[str(v) for v in row] for row in self.class_matrix],
            "independent": self.independent,
            "conclusions": {
                "intersection_in_commutator_subgroups": self.intersection_in_commutators,
                "intersection_in_next_lower_central_term": self.intersection_in_next_term,
                "model_cockcroft": self.model_cockcroft,
            },
        }


def proposition_check(p: Presentation, bound: int = DEFAULT_DEGREE_BOUND, cancel=None) -> CockcroftCertificate:
    """Certify ``p`` or raise a :class:`PropositionFailure`.

    A presentation without an r/s split is treated as all-``r`` with empty
    ``s``; the Cockcroft conclusion still follows.
    """
    weights = []
    for i, r in enumerate(p.relators):
        w = lcs_weight(r, bound, cancel)
        if w.kind == "exceeds":
            raise WeightExceedsBound(i, bound)
        weights.append(w)
    if not weights:
        raise PropositionFailure("presentation has no relators")
    n = weights[0].value
    if any(w.value != n for w in weights):
        raise UnequalWeights(weights)
    matrix = relator_class_matrix(p.relators, n, cancel)
    cols = len(lyndon_basis(p.alphabet.rank, n))
    dep = intlin.row_dependency(matrix, cols)
    if dep is not None:
        raise Dependent(n, matrix, dep)
    return CockcroftCertificate(
        presentation=p,
        n=n,
        relator_weights=tuple(w.value for w in weights),
        class_matrix=tuple(tuple(row) for row in matrix),
        independent=True,
        intersection_in_commutators=True,
        intersection_in_next_term=True,
        model_cockcroft=True,
    )


@dataclass(frozen=True)
class ENImage:
    """Image of ``mu`` in ``F_m / F_{m+1}``.

    ``target_exact`` says the true target ``F_m / [R,S]F_{m+1}`` coincides
    with ``F_m / F_{m+1}``, which holds once ``2n >= m + 1``.
    """

    target_degree: int
    vector: LieVector
    target_exact: bool

    def to_dict(self, names: Sequence[str]) -> dict:
        return {
            "target_degree": str(self.target_degree),
            "vector": {k: str(v) for k, v in self.vector.to_dict(names).items()},
            "target_exact": self.target_exact,
        }


def e_class(mu: Word, m: int, cert: CockcroftCertificate, cancel=None) -> ENImage:
    """Class of ``mu`` (assumed to lie in ``R & S``) in degree ``m > n``."""
    if m <= cert.n:
        raise DetectionError(f"degree {m} must exceed the certificate degree {cert.n}")
    vector = leading_lie_class(mu, m, cancel)
    return ENImage(m, vector, 2 * cert.n >= m + 1)


@dataclass(frozen=True)
class DetectionReport:
    weight: WeightResult
    image: ENImage | None
    detected: bool
    message: str

    def to_dict(self, names: Sequence[str]) -> dict:
        return {
            "weight": str(self.weight),
            "image": self.image.to_dict(names) if self.image else None,
            "detected": self.detected,
            "message": self.message,
        }


def detect_h3(
    mu: Word,
    cert: CockcroftCertificate,
    memberships: tuple[MembershipEvidence | None, MembershipEvidence | None],
    bound: int = DEFAULT_DEGREE_BOUND,
    cancel=None,
) -> DetectionReport:
    """Decide whether ``mu`` detects a nonobvious infinite-order class in ``H_3``."""
    p = cert.presentation
    if mu.is_identity():
        raise DetectionError("the identity carries no detection")
    if not p.has_partition:
        raise DetectionError("detection needs an r/s partition")
    for label, ev, rels in (("R", memberships[0], p.r), ("S", memberships[1], p.s)):
        if ev is None or not ev.proved:
            raise DetectionError(f"missing evidence that mu lies in {label}")
        if not evidence_is_valid(ev, mu, rels):
            raise DetectionError(f"evidence for membership in {label} does not check")
    weight = lcs_weight(mu, bound, cancel)
    if weight.kind == "exceeds":
        return DetectionReport(weight, None, False, f"weight exceeds the degree bound {bound}")
    if weight.value <= cert.n:
        raise ConsistencyAlarm(
            f"mu lies in R & S but has weight {weight.value} <= n = {cert.n}; the certificate would be false"
        )
    image = e_class(mu, weight.value, cert, cancel)
    if image.target_exact:
        msg = "nonobvious infinite-order element detected"
    else:
        msg = "class is nonzero only in a proper quotient of the target; no detection claimed"
    return DetectionReport(weight, image, image.target_exact and not image.vector.is_zero(), msg)
