"""Normal-ordered coordinate algebra of the quantum group SU_q(2).

The *-algebra is generated by a, b subject to

    ba = q ab,   b*a = q ab*,   bb* = b*b,
    a*a + q^2 b*b = 1,          aa* + bb* = 1,

from which a*b = q ba* and a*b* = q b*a* follow.  A vector-space basis is
given by the normal-ordered monomials

    e_{klm} = a^k b^l b*^m        (k >= 0)
    e_{klm} = b^l b*^m (a*)^{-k}  (k < 0)

with l, m >= 0.  Since b and b* commute, a single signed exponent k
suffices.  Elements are finite sums of monomials with ``QLaurent``
coefficients; all operations below are exact.

Multiplication is structural: a monomial is multiplied letter by letter,
each step expanding into at most two normal-ordered monomials.  This makes
termination obvious and leaves confluence as a testable property (left and
right folds of a word must agree).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Mapping

from .qarith import QLaurent, QRationalFn

Letter = Literal["a", "a*", "b", "b*"]
LETTERS: tuple[Letter, ...] = ("a", "a*", "b", "b*")


class NotHomogeneous(ValueError):
    """Monomial weight not divisible by p in a circle-degree computation."""


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponents (k, l, m) of the basis monomial e_{klm}."""

    k: int
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or self.m < 0:
            raise ValueError(f"b/b* exponents must be nonnegative: {self}")

    def letters(self) -> tuple[Letter, ...]:
        """The monomial as a word, in normal order."""
        if self.k >= 0:
            return ("a",) * self.k + ("b",) * self.l + ("b*",) * self.m
        return ("b",) * self.l + ("b*",) * self.m + ("a*",) * (-self.k)

    @property
    def word_length(self) -> int:
        return abs(self.k) + self.l + self.m

    def star(self) -> Monomial:
        return Monomial(-self.k, self.m, self.l)


ONE = Monomial(0, 0, 0)


def _mul_right(mon: Monomial, g: Letter) -> list[tuple[Monomial, QLaurent]]:
    """Normal-ordered expansion of e_{klm} * g."""
    k, l, m = mon.k, mon.l, mon.m
    if g == "b":
        if k >= 0:
            return [(Monomial(k, l + 1, m), QLaurent.one())]
        return [(Monomial(k, l + 1, m), QLaurent.q_power(-k))]
    if g == "b*":
        if k >= 0:
            return [(Monomial(k, l, m + 1), QLaurent.one())]
        return [(Monomial(k, l, m + 1), QLaurent.q_power(-k))]
    if g == "a":
        if k >= 0:
            return [(Monomial(k + 1, l, m), QLaurent.q_power(l + m))]
        # trailing a* absorbs: a*a = 1 - q^2 b*b
        return [
            (Monomial(k + 1, l, m), QLaurent.one()),
            (Monomial(k + 1, l + 1, m + 1), QLaurent.q_power(-2 * k, -1)),
        ]
    if g == "a*":
        if k <= 0:
            return [(Monomial(k - 1, l, m), QLaurent.one())]
        # a* passes the b-block (q^-1 per letter), then aa* = 1 - bb*
        return [
            (Monomial(k - 1, l, m), QLaurent.q_power(-(l + m))),
            (Monomial(k - 1, l + 1, m + 1), QLaurent.q_power(-(l + m), -1)),
        ]
    raise ValueError(f"unknown generator {g!r}")


def _mul_left(g: Letter, mon: Monomial) -> list[tuple[Monomial, QLaurent]]:
    """Normal-ordered expansion of g * e_{klm}."""
    k, l, m = mon.k, mon.l, mon.m
    if g == "b":
        if k >= 0:
            return [(Monomial(k, l + 1, m), QLaurent.q_power(k))]
        return [(Monomial(k, l + 1, m), QLaurent.one())]
    if g == "b*":
        if k >= 0:
            return [(Monomial(k, l, m + 1), QLaurent.q_power(k))]
        return [(Monomial(k, l, m + 1), QLaurent.one())]
    if g == "a*":
        if k > 0:
            # leading a absorbs: a*a = 1 - q^2 b*b, then bb* passes right
            return [
                (Monomial(k - 1, l, m), QLaurent.one()),
                (Monomial(k - 1, l + 1, m + 1), QLaurent.q_power(2 * k, -1)),
            ]
        return [(Monomial(k - 1, l, m), QLaurent.q_power(l + m))]
    if g == "a":
        if k >= 0:
            return [(Monomial(k + 1, l, m), QLaurent.one())]
        # a passes the b-block, then aa* = 1 - bb*
        return [
            (Monomial(k + 1, l, m), QLaurent.q_power(-(l + m))),
            (Monomial(k + 1, l + 1, m + 1), QLaurent.q_power(-(l + m), -1)),
        ]
    raise ValueError(f"unknown generator {g!r}")


class NCPoly:
    """A finite sum of normal-ordered monomials with QLaurent coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, QLaurent] | Iterable[tuple[Monomial, QLaurent]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, QLaurent] = {}
        for mon, c in items:
            if c.is_zero:
                continue
            if mon in acc:
                s = acc[mon] + c
                if s.is_zero:
                    del acc[mon]
                else:
                    acc[mon] = s
            else:
                acc[mon] = c
        self._terms = dict(sorted(acc.items()))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> NCPoly:
        return NCPoly()

    @staticmethod
    def one() -> NCPoly:
        return NCPoly({ONE: QLaurent.one()})

    @staticmethod
    def monomial(k: int, l: int, m: int, coeff: QLaurent | int = 1) -> NCPoly:
        c = coeff if isinstance(coeff, QLaurent) else QLaurent.const(coeff)
        return NCPoly({Monomial(k, l, m): c})

    @staticmethod
    def generator(g: Letter) -> NCPoly:
        k, l, m = {"a": (1, 0, 0), "a*": (-1, 0, 0), "b": (0, 1, 0), "b*": (0, 0, 1)}[g]
        return NCPoly.monomial(k, l, m)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[tuple[Monomial, QLaurent]]:
        return iter(self._terms.items())

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def coeff(self, mon: Monomial) -> QLaurent:
        return self._terms.get(mon, QLaurent.zero())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NCPoly.one() * QLaurent.const(other) if other else NCPoly.zero()
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "NCPoly(0)"
        bits = [f"({mon.k},{mon.l},{mon.m}): {c!r}" for mon, c in self._terms.items()]
        return "NCPoly{" + ", ".join(bits) + "}"

    # -- linear structure ----------------------------------------------------

    def __add__(self, other) -> NCPoly:
        if isinstance(other, int):
            other = NCPoly.monomial(0, 0, 0, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc = dict(self._terms)
        for mon, c in other._terms.items():
            s = acc.get(mon, QLaurent.zero()) + c
            if s.is_zero:
                acc.pop(mon, None)
            else:
                acc[mon] = s
        return NCPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly({mon: -c for mon, c in self._terms.items()})

    def __sub__(self, other) -> NCPoly:
        if isinstance(other, int):
            other = NCPoly.monomial(0, 0, 0, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    __rsub__ = lambda self, other: (-self) + other

    def scale(self, c: QLaurent | int | Fraction) -> NCPoly:
        c = c if isinstance(c, QLaurent) else QLaurent.const(c)
        return NCPoly({mon: cc * c for mon, cc in self._terms.items()})

    # -- multiplication ------------------------------------------------------

    def _mul_letter(self, g: Letter) -> NCPoly:
        out: list[tuple[Monomial, QLaurent]] = []
        for mon, c in self._terms.items():
            for mon2, c2 in _mul_right(mon, g):
                out.append((mon2, c * c2))
        return NCPoly(out)

    def _letter_mul(self, g: Letter) -> NCPoly:
        out: list[tuple[Monomial, QLaurent]] = []
        for mon, c in self._terms.items():
            for mon2, c2 in _mul_left(g, mon):
                out.append((mon2, c * c2))
        return NCPoly(out)

    def __mul__(self, other) -> NCPoly:
        if isinstance(other, QLaurent):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        total = NCPoly.zero()
        for mon, c in other._terms.items():
            part = self.scale(c)
            for g in mon.letters():
                part = part._mul_letter(g)
            total = total + part
        return total

    def __rmul__(self, other) -> NCPoly:
        if isinstance(other, QLaurent):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- involution and functionals -------------------------------------------

    def star(self) -> NCPoly:
        """The *-involution; coefficients are real so only monomials flip."""
        return NCPoly({mon.star(): c for mon, c in self._terms.items()})

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"k": mon.k, "l": mon.l, "m": mon.m, "coeff": c.to_json()}
                for mon, c in self._terms.items()
            ]
        }

    @staticmethod
    def from_json(data: dict) -> NCPoly:
        return NCPoly(
            {
                Monomial(t["k"], t["l"], t["m"]): QLaurent.from_json(t["coeff"])
                for t in data["terms"]
            }
        )


@dataclass(frozen=True)
class GenWord:
    """An unreduced word in the generators, with a scalar prefactor."""

    letters: tuple[Letter, ...]
    coeff: QLaurent = QLaurent.one()

    def __post_init__(self):
        for g in self.letters:
            if g not in LETTERS:
                raise ValueError(f"unknown generator {g!r}")

    def star(self) -> GenWord:
        flip = {"a": "a*", "a*": "a", "b": "b*", "b*": "b"}
        return GenWord(tuple(flip[g] for g in reversed(self.letters)), self.coeff)


def word(*letters: Letter, coeff: QLaurent | int = 1) -> GenWord:
    c = coeff if isinstance(coeff, QLaurent) else QLaurent.const(coeff)
    return GenWord(tuple(letters), c)


def normal_form(w: GenWord | Iterable[Letter], strategy: str = "left") -> NCPoly:
    """Reduce a word to the e_{klm} basis.

    ``strategy`` selects the fold direction: "left" multiplies letters onto
    an accumulator from the left end of the word, "right" from the right
    end.  Both must agree (associativity of the rewrite rules); the test
    suite exercises this on random words.
    """
    if not isinstance(w, GenWord):
        w = GenWord(tuple(w))
    acc = NCPoly({ONE: w.coeff})
    if strategy == "left":
        for g in w.letters:
            acc = acc._mul_letter(g)
    elif strategy == "right":
        for g in reversed(w.letters):
            acc = acc._letter_mul(g)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return acc


def multiply(x: NCPoly, y: NCPoly) -> NCPoly:
    return x * y


def star(x: NCPoly) -> NCPoly:
    return x.star()


def haar_state(x: NCPoly) -> QRationalFn:
    """The bi-invariant state: e_{klm} -> 0 unless k = 0 and l = m.

    On e_{0,m,m} the value is (1 - q^2) / (1 - q^(2m+2)); dividing out the
    common factor (1 - q^2) leaves 1 / (1 + q^2 + ... + q^(2m)), which is
    what gets summed here.
    """
    total = QRationalFn.zero()
    for mon, c in x.items():
        if mon.k == 0 and mon.l == mon.m:
            den = QLaurent({2 * i: Fraction(1) for i in range(mon.m + 1)})
            total = total + QRationalFn(c, den)
    return total


def u1_degree(mon: Monomial, p: int, r: int) -> int:
    """Circle-action degree n with k + r(l - m) = n p."""
    w = mon.k + r * (mon.l - mon.m)
    if w % p != 0:
        raise NotHomogeneous(f"{mon} has weight {w}, not a multiple of {p}")
    return w // p


def lens_member(mon: Monomial, p: int, r: int) -> bool:
    """Whether e_{klm} lies in the invariant subalgebra L_q(p, r)."""
    return (mon.k + r * (mon.l - mon.m)) % p == 0


def specialize(x: NCPoly, q: float) -> dict[Monomial, float]:
    """Evaluate all coefficients at a numeric q; exact zeros are dropped."""
    out: dict[Monomial, float] = {}
    for mon, c in x.items():
        v = c.eval_at(q)
        if v != 0.0:
            out[mon] = v
    return out
