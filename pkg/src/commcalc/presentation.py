"""Finite presentations and the cellular homology of their model two-complex.

The model has one 0-cell, a 1-cell per generator and a 2-cell per relator.
The only nonzero boundary map is d2, whose matrix is the exponent-sum matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from . import intlin
from .words import Alphabet, Word, WordError, exponent_sum, format_word, parse_word

if TYPE_CHECKING:
    from .cockcroft import CockcroftCertificate


class PresentationError(WordError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    # part label per relator ("r" or "s"); empty when there is no split
    parts: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "parts", tuple(self.parts))
        for i, r in enumerate(self.relators):
            if r.alphabet != self.alphabet:
                raise PresentationError(f"relator {i} uses a different alphabet")
            if r.is_identity():
                raise PresentationError(f"relator {i} freely reduces to the identity")
        if self.parts:
            if len(self.parts) != len(self.relators):
                raise PresentationError("partition must label every relator")
            if set(self.parts) - {"r", "s"}:
                raise PresentationError(f"unknown part labels {set(self.parts) - {'r', 's'}}")
            if "r" not in self.parts or "s" not in self.parts:
                raise PresentationError("both the r part and the s part must be nonempty")

    @classmethod
    def split(cls, alphabet: Alphabet, r: Sequence[Word], s: Sequence[Word]) -> "Presentation":
        return cls(alphabet, tuple(r) + tuple(s), ("r",) * len(r) + ("s",) * len(s))

    @property
    def has_partition(self) -> bool:
        return bool(self.parts)

    def part(self, label: str) -> tuple[Word, ...]:
        if not self.parts:
            raise PresentationError("presentation has no r/s partition")
        return tuple(w for w, p in zip(self.relators, self.parts) if p == label)

    @property
    def r(self) -> tuple[Word, ...]:
        return self.part("r")

    @property
    def s(self) -> tuple[Word, ...]:
        return self.part("s")

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.alphabet.names)]
        labels = self.parts or ("r",) * len(self.relators)
        lines += [f"{p}: {format_word(w)}" for p, w in zip(labels, self.relators)]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Read the ``gens:`` / ``r:`` / ``s:`` line format; ``#`` lines are comments.

    If every relator is on ``r:`` lines the result has no partition.
    """
    alphabet = None
    entries: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'key: value'")
        if key == "gens":
            if alphabet is not None:
                raise PresentationError(f"line {lineno}: duplicate gens line")
            alphabet = Alphabet(rest)
        elif key in ("r", "s"):
            entries.append((key, rest, lineno))
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None:
        raise PresentationError("missing 'gens:' line")
    relators, parts = [], []
    for key, rest, lineno in entries:
        try:
            relators.append(parse_word(rest, alphabet))
        except WordError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
        parts.append(key)
    if "s" not in parts:
        parts = []
    return Presentation(alphabet, tuple(relators), tuple(parts))


def exponent_matrix(p: Presentation) -> list[list[int]]:
    """Entry (i, j) is the exponent sum of generator j in relator i."""
    return [[exponent_sum(r, j) for j in range(p.alphabet.rank)] for r in p.relators]


@dataclass(frozen=True)
class HomologyReport:
    h1_free_rank: int
    h1_torsion: tuple[int, ...]
    h2_free_rank: int
    relator_count: int
    generator_count: int
    boundary_rank: int

    def h1_string(self) -> str:
        parts = [f"Z/{d}" for d in self.h1_torsion]
        if self.h1_free_rank:
            parts.append("Z" if self.h1_free_rank == 1 else f"Z^{self.h1_free_rank}")
        return " + ".join(parts) or "0"

    def to_dict(self) -> dict:
        return {
            "h1": self.h1_string(),
            "h1_free_rank": str(self.h1_free_rank),
            "h1_torsion": [str(d) for d in self.h1_torsion],
            "h2_free_rank": str(self.h2_free_rank),
        }


def complex_homology(p: Presentation) -> HomologyReport:
    m = exponent_matrix(p)
    snf = intlin.smith_normal_form(m, p.alphabet.rank)
    k = p.alphabet.rank
    return HomologyReport(
        h1_free_rank=k - snf.rank,
        h1_torsion=tuple(d for d in snf.invariant_factors if d > 1),
        h2_free_rank=len(p.relators) - snf.rank,
        relator_count=len(p.relators),
        generator_count=k,
        boundary_rank=snf.rank,
    )


@dataclass(frozen=True)
class EfficiencyReport:
    deficiency: int
    h1_free_rank: int
    h2_generators: int
    efficient: bool
    # under a Cockcroft certificate H2 of the group equals H2 of the complex
    h2_group_free_rank: int = field(default=0)

    def to_dict(self) -> dict:
        return {
            "generators_minus_relators": str(self.deficiency),
            "h1_free_rank": str(self.h1_free_rank),
            "h2_min_generators": str(self.h2_generators),
            "h2_group_is_free_abelian_of_rank": str(self.h2_group_free_rank),
            "efficient": self.efficient,
        }


def efficiency_report(p: Presentation, cert: "CockcroftCertificate | None") -> EfficiencyReport:
    """Efficiency count, available only for a certified Cockcroft presentation."""
    if cert is None or not cert.model_cockcroft:
        raise PresentationError("efficiency report requires a Cockcroft certificate")
    if cert.presentation != p:
        raise PresentationError("certificate was issued for a different presentation")
    h = complex_homology(p)
    deficiency = p.alphabet.rank - len(p.relators)
    return EfficiencyReport(
        deficiency=deficiency,
        h1_free_rank=h.h1_free_rank,
        h2_generators=h.h2_free_rank,
        efficient=deficiency == h.h1_free_rank - h.h2_free_rank,
        h2_group_free_rank=h.h2_free_rank,
    )
