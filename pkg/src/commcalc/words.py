"""Elements of a finitely generated free group.

Words are stored in syllable form: a tuple of ``(generator index, exponent)``
pairs with nonzero exponents and no two adjacent syllables on the same
generator.  Exponents are Python ints, so ``x^(10**30)`` costs one syllable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class WordError(ValueError):
    pass


class AlphabetMismatch(WordError):
    pass


class WordSyntaxError(WordError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownGenerator(WordError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown generator {name!r} at position {position}")


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str] | str):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        if not names:
            raise WordError("alphabet needs at least one generator")
        for name in names:
            if not name or not _is_ident(name):
                raise WordError(f"bad generator name {name!r}")
        if len(set(names)) != len(names):
            raise WordError(f"duplicate generator names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator(name, -1) from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def generator(self, name_or_index: str | int) -> "Word":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.rank:
            raise IndexError(f"generator index {i} out of range for rank {self.rank}")
        return Word(self, ((i, 1),))

    def identity(self) -> "Word":
        return Word(self, ())

    def word(self, text: str) -> "Word":
        return parse_word(text, self)


def _is_ident(s: str) -> bool:
    return s[0].isalpha() and all(c.isalnum() or c == "_" for c in s)


def _reduce_syllables(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e != 0:
                out.append((g, e))
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """A freely reduced word.  Immutable and hashable."""

    __slots__ = ("alphabet", "syllables", "_hash")

    def __init__(self, alphabet: Alphabet, syllables: Iterable[tuple[int, int]] = ()):
        syl = _reduce_syllables((int(g), int(e)) for g, e in syllables)
        for g, _ in syl:
            if not 0 <= g < alphabet.rank:
                raise IndexError(f"generator index {g} out of range for rank {alphabet.rank}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "syllables", syl)
        object.__setattr__(self, "_hash", hash((alphabet.names, syl)))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[int]) -> "Word":
        """Letters are signed 1-based indices: ``+(i+1)`` is generator i, ``-(i+1)`` its inverse."""
        return cls(alphabet, ((abs(l) - 1, 1 if l > 0 else -1) for l in letters))

    def letters(self) -> tuple[int, ...]:
        out: list[int] = []
        for g, e in self.syllables:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return tuple(out)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.syllables == other.syllables

    def __hash__(self) -> int:
        return self._hash

    def _check(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.names} != {other.alphabet.names}")

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        n = int(n)
        base = self if n >= 0 else invert(self)
        n = abs(n)
        if len(base.syllables) == 1:
            g, e = base.syllables[0]
            return Word(self.alphabet, ((g, e * n),))
        out = self.alphabet.identity()
        while n:
            if n & 1:
                out = multiply(out, base)
            base = multiply(base, base)
            n >>= 1
        return out

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def multiply(u: Word, v: Word) -> Word:
    u._check(v)
    if not u.syllables:
        return v
    if not v.syllables:
        return u
    a, b = list(u.syllables), list(v.syllables)
    # cancel across the seam only; both halves are already reduced
    while a and b and a[-1][0] == b[0][0]:
        g = a[-1][0]
        e = a.pop()[1] + b[0][1]
        del b[0]
        if e != 0:
            a.append((g, e))
            break
    out = Word.__new__(Word)
    syl = tuple(a) + tuple(b)
    object.__setattr__(out, "alphabet", u.alphabet)
    object.__setattr__(out, "syllables", syl)
    object.__setattr__(out, "_hash", hash((u.alphabet.names, syl)))
    return out


def invert(u: Word) -> Word:
    return Word(u.alphabet, ((g, -e) for g, e in reversed(u.syllables)))


def product(words: Sequence[Word], alphabet: Alphabet | None = None) -> Word:
    if not words:
        if alphabet is None:
            raise WordError("empty product needs an alphabet")
        return alphabet.identity()
    out = words[0]
    for w in words[1:]:
        out = multiply(out, w)
    return out


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    u._check(v)
    return product([u, v, invert(u), invert(v)])


def conjugate(u: Word, g: Word) -> Word:
    """``g u g^-1``."""
    return product([g, u, invert(g)])


def cyclic_reduce(u: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``u == conjugator * core * conjugator^-1``."""
    syl = list(u.syllables)
    left: list[tuple[int, int]] = []
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        g, e_first = syl[0]
        e_last = syl[-1][1]
        if (e_first > 0) == (e_last > 0):
            break
        # peel min(|e_first|, |e_last|) letters off both ends
        k = min(abs(e_first), abs(e_last))
        step = k if e_first > 0 else -k
        left.append((g, step))
        syl[0] = (g, e_first - step)
        syl[-1] = (g, e_last + step)
        if syl[-1][1] == 0:
            syl.pop()
        if syl and syl[0][1] == 0:
            syl.pop(0)
    return Word(u.alphabet, syl), Word(u.alphabet, left)


def _smallest_period(seq: Sequence[int]) -> int:
    n = len(seq)
    # prefix function: the smallest period p divides n iff seq is a p-power
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and seq[i] != seq[k]:
            k = pi[k - 1]
        if seq[i] == seq[k]:
            k += 1
        pi[i] = k
    p = n - pi[-1]
    return p if n % p == 0 else n


def root_decompose(u: Word) -> tuple[Word, int]:
    """Write ``u = q^e`` with ``e`` maximal, so ``q`` is not a proper power."""
    if u.is_identity():
        raise WordError("the identity has no root decomposition")
    core, conj = cyclic_reduce(u)
    if len(core.syllables) == 1:
        g, e = core.syllables[0]
        q_core = Word(u.alphabet, ((g, 1 if e > 0 else -1),))
        return conjugate(q_core, conj), abs(e)
    letters = core.letters()
    p = _smallest_period(letters)
    q_core = Word.from_letters(u.alphabet, letters[:p])
    return conjugate(q_core, conj), len(letters) // p


def exponent_sum(u: Word, g: int) -> int:
    if not 0 <= g < u.alphabet.rank:
        raise IndexError(f"generator index {g} out of range for rank {u.alphabet.rank}")
    return sum(e for h, e in u.syllables if h == g)


def abelianize(u: Word) -> tuple[int, ...]:
    v = [0] * u.alphabet.rank
    for g, e in u.syllables:
        v[g] += e
    return tuple(v)


# -- formatting ---------------------------------------------------------------

def format_word(u: Word) -> str:
    """Render in the input grammar; ``parse_word(format_word(u)) == u``."""
    if not u.syllables:
        return "1"
    names = u.alphabet.names
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in u.syllables)


# -- parsing ------------------------------------------------------------------
#
#   word   := factor { factor }
#   factor := atom [ '^' int ]
#   atom   := ident | '(' word ')' | '[' word ',' word ']' | '1'
#   int    := [ '-' ] digit { digit }

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def parse(self) -> Word:
        w = self.word()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return w

    def starts_atom(self) -> bool:
        c = self.peek()
        return bool(c) and (c.isalpha() or c in "([1")

    def word(self) -> Word:
        if not self.starts_atom():
            found = self.peek() or "end of input"
            raise self.error(f"expected a word, found {found!r}")
        w = self.factor()
        while self.starts_atom():
            w = multiply(w, self.factor())
        return w

    def factor(self) -> Word:
        a = self.atom()
        if self.peek() == "^":
            self.pos += 1
            a = a ** self.integer()
        return a

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer exponent")
        return int(self.text[start:self.pos])

    def atom(self) -> Word:
        c = self.peek()
        if c == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        if c == "1":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                raise self.error("only the literal 1 is allowed as an atom", self.pos - 1)
            return self.alphabet.identity()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        try:
            i = self.alphabet.names.index(name)
        except ValueError:
            raise UnknownGenerator(name, start) from None
        return Word(self.alphabet, ((i, 1),))


def parse_word(text: str, alphabet: Alphabet) -> Word:
    return _Parser(text, alphabet).parse()
