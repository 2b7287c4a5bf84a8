"""Evidence that a word lies in the normal closure of a set of relators.

Three kinds of evidence:

* a :class:`Witness`, an explicit product of conjugates of relators and
  their inverses, checked by free reduction;
* a bounded search that rewrites the word to the identity by inserting
  cyclic permutations of relators (every step stays in the same coset, so a
  hit is a proof);
* :class:`Unknown` when the bounds run out.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import intlin
from ._backend import kernels
from .magnus import Cancelled
from .words import Alphabet, Word, abelianize, format_word, invert, multiply, parse_word

DEFAULT_MAX_STEPS = 1_000_000


@dataclass(frozen=True)
class WitnessFactor:
    conjugator: Word
    relator: int
    exponent: int  # +1 or -1


@dataclass(frozen=True)
class Witness:
    """``mu == prod_i  g_i * r_{k_i}^{e_i} * g_i^-1``."""

    factors: tuple[WitnessFactor, ...]

    def to_dict(self) -> dict:
        return {
            "factors": [
                {"conjugator": format_word(f.conjugator), "relator": f.relator, "exponent": f.exponent}
                for f in self.factors
            ]
        }

    @classmethod
    def from_dict(cls, data: dict, alphabet: Alphabet) -> "Witness":
        factors = []
        for item in data["factors"]:
            e = int(item["exponent"])
            if e not in (1, -1):
                raise ValueError(f"witness exponent must be +1 or -1, got {e}")
            factors.append(WitnessFactor(parse_word(item["conjugator"], alphabet), int(item["relator"]), e))
        return cls(tuple(factors))


def witness_product(w: Witness, relators: Sequence[Word], alphabet: Alphabet) -> Word:
    out = alphabet.identity()
    for f in w.factors:
        if not 0 <= f.relator < len(relators):
            raise IndexError(f"relator index {f.relator} out of range")
        rel = relators[f.relator] if f.exponent > 0 else invert(relators[f.relator])
        out = multiply(out, multiply(multiply(f.conjugator, rel), invert(f.conjugator)))
    return out


def check_witness(mu: Word, w: Witness, relators: Sequence[Word]) -> bool:
    return witness_product(w, relators, mu.alphabet) == mu


def exponent_balance(w: Witness, relators: Sequence[Word]) -> dict[int, int]:
    """Signed count of occurrences of each relator in the witness."""
    out = {i: 0 for i in range(len(relators))}
    for f in w.factors:
        out[f.relator] = out.get(f.relator, 0) + f.exponent
    return out


# -- evidence -----------------------------------------------------------------

@dataclass(frozen=True)
class RewriteStep:
    """Insert cyclic shift ``shift`` of ``relator^exponent`` before letter ``position``."""

    position: int
    relator: int
    exponent: int
    shift: int
    result: Word


@dataclass(frozen=True)
class Verified:
    witness: Witness
    proved = True


@dataclass(frozen=True)
class SearchProved:
    start: Word
    trace: tuple[RewriteStep, ...]
    states: int
    proved = True


@dataclass(frozen=True)
class Unknown:
    reason: str
    states: int = 0
    proved = False


MembershipEvidence = Verified | SearchProved | Unknown


def replay(evidence: SearchProved, relators: Sequence[Word]) -> bool:
    """Re-run a rewrite trace and confirm it ends at the identity."""
    letters = evidence.start.letters()
    for step in evidence.trace:
        ins = _insertion_letters(relators[step.relator], step.exponent, step.shift)
        letters = kernels.free_reduce(letters[: step.position] + ins + letters[step.position:])
        if Word.from_letters(evidence.start.alphabet, letters) != step.result:
            return False
    return not letters


def _insertion_letters(rel: Word, exponent: int, shift: int) -> tuple[int, ...]:
    base = rel.letters() if exponent > 0 else invert(rel).letters()
    return base[shift:] + base[:shift]


def trace_to_witness(evidence: SearchProved, relators: Sequence[Word]) -> Witness:
    """Convert a proof trace to product-of-conjugates form.

    Step i turns ``w_i`` into ``w_{i+1} = w_i * t_i`` with
    ``t_i = h_i rho_i h_i^-1``, ``h_i = (rho_i[:shift] * suffix)^-1``.  Since
    the last word is the identity, ``mu = t_{k-1}^-1 ... t_0^-1``.
    """
    alphabet = evidence.start.alphabet
    letters = evidence.start.letters()
    inverses = []
    for step in evidence.trace:
        rho = relators[step.relator] if step.exponent > 0 else invert(relators[step.relator])
        prefix = Word.from_letters(alphabet, rho.letters()[: step.shift])
        suffix = Word.from_letters(alphabet, letters[step.position:])
        h = invert(multiply(prefix, suffix))
        inverses.append(WitnessFactor(h, step.relator, -step.exponent))
        ins = _insertion_letters(relators[step.relator], step.exponent, step.shift)
        letters = kernels.free_reduce(letters[: step.position] + ins + letters[step.position:])
    return Witness(tuple(reversed(inverses)))


def abelian_obstruction(mu: Word, relators: Sequence[Word]) -> str | None:
    """Explain why ``mu`` cannot lie in the normal closure, judging by exponent sums."""
    target = list(abelianize(mu))
    if not any(target):
        return None
    rows = [list(abelianize(r)) for r in relators]
    k = mu.alphabet.rank
    if not rows or not any(any(r) for r in rows):
        return f"exponent sums {target} are nonzero but every relator has zero exponent sums"
    # target lies in the row lattice iff appending it keeps the invariant factors
    base = intlin.smith_normal_form(rows, k)
    ext = intlin.smith_normal_form(rows + [target], k)
    if ext.invariant_factors != base.invariant_factors:
        return f"exponent sums {target} are not an integer combination of the relators' exponent sums"
    return None


@dataclass
class SearchBounds:
    max_length: int | None = None
    max_steps: int = DEFAULT_MAX_STEPS
    strategy: str = "shortest"

    def resolved_length(self, mu: Word, relators: Sequence[Word]) -> int:
        if self.max_length is not None:
            return self.max_length
        return 2 * len(mu) + max((len(r) for r in relators), default=0)


def search_membership(
    mu: Word,
    relators: Sequence[Word],
    bounds: SearchBounds | None = None,
    cancel=None,
) -> SearchProved | Unknown:
    """Semi-decide ``mu`` in the normal closure of ``relators``.

    States are freely reduced words reachable from ``mu`` by inserting a
    cyclic permutation of a relator or its inverse at any position, kept
    within ``max_length``.  ``strategy="shortest"`` expands shorter words
    first (breadth-first among equal lengths); ``"bfs"`` is plain
    breadth-first.  Both explore the same bounded state space.
    """
    bounds = bounds or SearchBounds()
    if bounds.max_steps < 1 or (bounds.max_length is not None and bounds.max_length < 1):
        raise ValueError("search bounds must be positive")
    if bounds.strategy not in ("shortest", "bfs"):
        raise ValueError(f"unknown strategy {bounds.strategy!r}")
    if mu.is_identity():
        return SearchProved(mu, (), 0)
    obstruction = abelian_obstruction(mu, relators)
    if obstruction:
        return Unknown(f"abelian obstruction: {obstruction}")
    if not relators:
        return Unknown("no relators")

    max_length = bounds.resolved_length(mu, relators)
    insertions: list[tuple[int, ...]] = []
    labels: list[tuple[int, int, int]] = []
    seen_ins = set()
    for i, r in enumerate(relators):
        for e in (1, -1):
            base = r.letters() if e > 0 else invert(r).letters()
            for k in range(len(base)):
                ins = base[k:] + base[:k]
                if ins not in seen_ins:
                    seen_ins.add(ins)
                    insertions.append(ins)
                    labels.append((i, e, k))

    start = mu.letters()
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int, int] | None] = {start: None}
    counter = itertools.count()
    if bounds.strategy == "bfs":
        frontier = deque([start])
        pop, push = frontier.popleft, frontier.append
    else:
        heap = [(len(start), next(counter), start)]
        pop = lambda: heapq.heappop(heap)[2]  # noqa: E731
        push = lambda w: heapq.heappush(heap, (len(w), next(counter), w))  # noqa: E731
        frontier = heap

    expanded = 0
    while frontier:
        if cancel is not None and cancel.is_set():
            raise Cancelled("membership search cancelled")
        word = pop()
        expanded += 1
        for nxt, pos, k in kernels.insertion_neighbours(word, insertions, max_length):
            if nxt in parent:
                continue
            parent[nxt] = (word, pos, k)
            if not nxt:
                return SearchProved(mu, _build_trace(mu.alphabet, parent, nxt, labels), len(parent))
            push(nxt)
        if len(parent) >= bounds.max_steps:
            return Unknown(f"state limit {bounds.max_steps} reached", len(parent))
    return Unknown(f"state space exhausted at max_length {max_length}", len(parent))


def _build_trace(alphabet, parent, end, labels) -> tuple[RewriteStep, ...]:
    steps = []
    cur = end
    while parent[cur] is not None:
        prev, pos, k = parent[cur]
        i, e, shift = labels[k]
        steps.append(RewriteStep(pos, i, e, shift, Word.from_letters(alphabet, cur)))
        cur = prev
    return tuple(reversed(steps))


def membership_evidence(
    mu: Word,
    relators: Sequence[Word],
    witness: Witness | None = None,
    bounds: SearchBounds | None = None,
    cancel=None,
) -> MembershipEvidence:
    """Check a supplied witness, or search for a proof and convert it to a witness."""
    if witness is not None:
        if check_witness(mu, witness, relators):
            return Verified(witness)
        return Unknown("supplied witness does not reproduce the word")
    return search_membership(mu, relators, bounds, cancel)


def evidence_is_valid(evidence: MembershipEvidence, mu: Word, relators: Sequence[Word]) -> bool:
    if isinstance(evidence, Verified):
        return check_witness(mu, evidence.witness, relators)
    if isinstance(evidence, SearchProved):
        return evidence.start == mu and replay(evidence, relators)
    return False
