"""Exact scalar arithmetic over odd prime fields F_p and the rationals Q.

Scalars are plain Python values: a canonical residue ``int`` in ``0..p-1``
for a prime field, a reduced ``fractions.Fraction`` for Q.  A :class:`Field`
instance owns the arithmetic, so matrix and elimination code is written once
and runs over either field.  Square classes (elements of k*/k*^2) get their
own small type because they are the codomain of the spinor norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    """Division by the field zero."""


class ZeroHasNoClass(ValueError):
    """Square classes live in k*/k*^2, so zero has none."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """F_p for an odd prime p, or Q when ``p`` is None.

    Characteristic 2 is rejected outright: every construction downstream
    divides by 2 somewhere (forms, reflections, spinor norms).
    """

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and (self.p == 2 or not _is_prime(self.p)):
            raise ValueError(f"modulus must be an odd prime, got {self.p}")

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    # -- canonicalisation ------------------------------------------------

    def of(self, v: int | Fraction) -> Scalar:
        """Canonicalise an int or Fraction into this field."""
        if self.p is None:
            return Fraction(v)
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {v} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return v % self.p

    def parse(self, text: str) -> Scalar:
        """Parse ``"7"`` or ``"3/4"``."""
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.of(int(num)), self.of(int(den)))
        return self.of(int(text))

    def to_str(self, a: Scalar) -> str:
        return str(a)

    # -- arithmetic --------------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if b == 0:
            raise DivisionByZero("division by zero")
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("cannot enumerate Q")
        return iter(range(self.p))

    def nonzero_elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("cannot enumerate Q")
        return iter(range(1, self.p))

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field(None)


@dataclass(frozen=True)
class SquareClass:
    """An element of k*/k*^2.

    For F_p the group has two elements, represented by ``rep`` in {+1, -1}
    (+1 the squares).  For Q the group is infinite; ``rep`` is the signed
    squarefree representative.
    """

    rep: int
    prime: bool

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.prime != other.prime:
            raise ValueError("square classes from different field kinds")
        if self.prime:
            return SquareClass(self.rep * other.rep, True)
        return SquareClass(_squarefree(self.rep * other.rep), False)

    @property
    def is_square(self) -> bool:
        return self.rep == 1

    def __str__(self) -> str:
        if self.prime:
            return "square" if self.rep == 1 else "nonsquare"
        return str(self.rep)


def _squarefree(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    assert n != 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                out *= d
        d += 1
    return sign * out * n


def square_class(field: Field, a: Scalar) -> SquareClass:
    """The image of a nonzero scalar in k*/k*^2.

    F_p uses Euler's criterion; Q takes the signed squarefree part of
    numerator times denominator.
    """
    if a == 0:
        raise ZeroHasNoClass("zero has no square class")
    if field.p is not None:
        return SquareClass(1 if pow(a, (field.p - 1) // 2, field.p) == 1 else -1, True)
    f = Fraction(a)
    return SquareClass(_squarefree(f.numerator * f.denominator), False)


def canonical_nonsquare(p: int) -> int:
    """Smallest integer >= 2 that is a non-square mod p.

    Fixing the representative this way keeps twisted forms (and hence the
    words produced over them) reproducible across runs.
    """
    field = Field(p)
    for c in range(2, p):
        if not square_class(field, c).is_square:
            return c
    raise ValueError(f"no nonsquare mod {p}")
