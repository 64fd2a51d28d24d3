"""Exact arithmetic in the deformation parameter q.

Every symbolic scalar in this package is a Laurent polynomial in q with
rational coefficients (``QLaurent``), so that algebraic identities can be
checked exactly rather than to a floating-point tolerance.  The deformed
integer

    [n] = (q^n - q^-n) / (q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)

is the basic building block.  ``QRationalFn`` is the fraction field of the
Laurent ring; it shows up where quotients are unavoidable (the Haar state,
exact linear solves).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Scalar = Union[int, Fraction, "QLaurent"]


class DomainError(ValueError):
    """Evaluation point outside the allowed interval [0, 1]."""


class NegativePowerAtZero(ValueError):
    """Laurent polynomial with a q^(-k) term evaluated at q = 0."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not a rational coefficient: {c!r}")


class QLaurent:
    """An element of Q[q, q^-1], stored as {exponent: coefficient}.

    Instances are immutable and hashable; zero coefficients are never
    stored.  All ring operations are exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = _as_fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + c
                if not acc[int(e)]:
                    del acc[int(e)]
        self._terms = dict(sorted(acc.items()))
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> QLaurent:
        return QLaurent()

    @staticmethod
    def one() -> QLaurent:
        return QLaurent({0: Fraction(1)})

    @staticmethod
    def const(c) -> QLaurent:
        return QLaurent({0: _as_fraction(c)})

    @staticmethod
    def q_power(exp: int, coeff=1) -> QLaurent:
        """The monomial coeff * q^exp."""
        return QLaurent({exp: _as_fraction(coeff)})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> QLaurent | None:
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return QLaurent.const(other)
        return None

    def __add__(self, other) -> QLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in o._terms.items():
            s = acc.get(e, Fraction(0)) + c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        return QLaurent(acc)

    __radd__ = __add__

    def __neg__(self) -> QLaurent:
        return QLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> QLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> QLaurent:
        return (-self) + other

    def __mul__(self, other) -> QLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                s = acc.get(e, Fraction(0)) + c1 * c2
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return QLaurent(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QLaurent:
        if n < 0:
            raise ValueError("negative powers only exist for unit monomials")
        out = QLaurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "QLaurent(0)"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return "QLaurent(" + " + ".join(parts) + ")"

    # -- evaluation --------------------------------------------------------

    def eval_at(self, q: float) -> float:
        """Evaluate at a numeric q in [0, 1] (Horner on each exponent sign)."""
        if not 0.0 <= q <= 1.0:
            raise DomainError(f"q = {q} outside [0, 1]")
        if not self._terms:
            return 0.0
        if q == 0.0 and self.min_exp < 0:
            raise NegativePowerAtZero(f"q^{self.min_exp} at q = 0")
        pos = [(e, c) for e, c in self._terms.items() if e >= 0]
        neg = [(e, c) for e, c in self._terms.items() if e < 0]
        total = 0.0
        if pos:
            # Horner, descending exponents.
            acc = 0.0
            prev = None
            for e, c in reversed(pos):
                if prev is not None:
                    acc *= q ** (prev - e)
                acc += float(c)
                prev = e
            total += acc * q**prev
        if neg:
            u = 1.0 / q
            acc = 0.0
            prev = None
            for e, c in neg:  # ascending e, i.e. descending -e
                if prev is not None:
                    acc *= u ** (prev - (-e))
                acc += float(c)
                prev = -e
            total += acc * u ** prev
        return total

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"terms": [[e, f"{c.numerator}/{c.denominator}"] for e, c in self._terms.items()]}

    @staticmethod
    def from_json(data: dict) -> QLaurent:
        return QLaurent({int(e): Fraction(s) for e, s in data["terms"]})


def q_number(n: int) -> QLaurent:
    """The deformed integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n).

    [0] = 0, [1] = 1 and [-n] = -[n].
    """
    if n == 0:
        return QLaurent.zero()
    sign = 1 if n > 0 else -1
    n = abs(n)
    return QLaurent({n - 1 - 2 * i: Fraction(sign) for i in range(n)})


def q_number_at(n: int, q: float) -> float:
    """[n] evaluated at a numeric q in (0, 1]."""
    if q == 1.0:
        return float(n)
    return (q**n - q**-n) / (q - 1.0 / q)


# ---------------------------------------------------------------------------
# Polynomial gcd and the fraction field
# ---------------------------------------------------------------------------


def _shift(p: QLaurent) -> tuple[list[Fraction], int]:
    """Dense coefficient list of q^-minexp * p, plus the shift."""
    lo = p.min_exp
    hi = p.max_exp
    coeffs = [Fraction(0)] * (hi - lo + 1)
    for e, c in p.items():
        coeffs[e - lo] = c
    return coeffs, lo


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            f = a[i] / lb
            quot[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    while len(a) > 1 and not a[-1]:
        a.pop()
    return quot, a


def laurent_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """A gcd of a and b in Q[q, q^-1], normalized to lowest term q^0, monic."""
    if a.is_zero:
        x = b
    elif b.is_zero:
        x = a
    else:
        pa, _ = _shift(a)
        pb, _ = _shift(b)
        while any(pb):
            _, pr = _poly_divmod(pa, pb)
            pa, pb = pb, pr
        x = QLaurent({i: c for i, c in enumerate(pa)})
    if x.is_zero:
        return x
    lead = x.coeff(x.max_exp)
    return x * QLaurent.q_power(-x.min_exp, 1 / lead)


def _divexact(a: QLaurent, g: QLaurent) -> QLaurent:
    pa, la = _shift(a)
    pg, lg = _shift(g)
    quot, rem = _poly_divmod(pa, pg)
    if any(rem):
        raise ValueError("not an exact divisor")
    return QLaurent({i + la - lg: c for i, c in enumerate(quot)})


class QRationalFn:
    """A quotient of two Laurent polynomials in q, reduced by their gcd."""

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent, *, reduce: bool = True):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = QLaurent.one()
        elif reduce:
            g = laurent_gcd(num, den)
            if g != QLaurent.one():
                num, den = _divexact(num, g), _divexact(den, g)
            # canonical: denominator starts at q^0 with lowest coefficient 1
            shift = den.min_exp
            scale = den.coeff(shift)
            unit = QLaurent.q_power(-shift, 1 / scale)
            num, den = num * unit, den * unit
        self.num = num
        self.den = den

    @staticmethod
    def from_laurent(p: QLaurent) -> QRationalFn:
        return QRationalFn(p, QLaurent.one(), reduce=False)

    @staticmethod
    def zero() -> QRationalFn:
        return QRationalFn.from_laurent(QLaurent.zero())

    @staticmethod
    def one() -> QRationalFn:
        return QRationalFn.from_laurent(QLaurent.one())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other) -> QRationalFn | None:
        if isinstance(other, QRationalFn):
            return other
        if isinstance(other, QLaurent):
            return QRationalFn.from_laurent(other)
        if isinstance(other, (int, Fraction)):
            return QRationalFn.from_laurent(QLaurent.const(other))
        return None

    def __add__(self, other) -> QRationalFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QRationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> QRationalFn:
        return QRationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> QRationalFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> QRationalFn:
        return (-self) + other

    def __mul__(self, other) -> QRationalFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QRationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QRationalFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return QRationalFn(self.num * o.den, self.den * o.num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den) == (o.num * self.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"QRationalFn({self.num!r} / {self.den!r})"

    def eval_at(self, q: float) -> float:
        d = self.den.eval_at(q)
        if d == 0.0:
            raise ZeroDivisionError(f"denominator vanishes at q = {q}")
        return self.num.eval_at(q) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}
