"""Exact scalars: rationals via ``fractions.Fraction`` and residues modulo a prime."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


class FieldMismatch(TypeError):
    """Raised when two scalars from different fields meet in one operation."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


_set = object.__setattr__


@total_ordering
class Mod:
    """Residue class modulo a prime. Immutable and hashable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        _set(self, "p", p)
        _set(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Mod is immutable")

    def _coerce(self, other) -> int:
        if type(other) is Mod and other.p == self.p:
            return other.value
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, bool) or not isinstance(other, int):
            if isinstance(other, Fraction):
                raise FieldMismatch(f"GF({self.p}) vs Q")
            return NotImplemented
        return other % self.p

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> Mod:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        # only used to give deterministic sort orders
        if isinstance(other, Mod):
            return (self.p, self.value) < (other.p, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"


Scalar = "Fraction | Mod"


@dataclass(frozen=True)
class Field:
    """Descriptor for Q (``modulus=None``) or GF(p)."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.modulus is None else "prime-field"

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def __call__(self, value) -> Fraction | Mod:
        """Coerce an int, Fraction or scalar of this field into the field."""
        if self.modulus is None:
            if isinstance(value, Mod):
                raise FieldMismatch(f"GF({value.p}) vs Q")
            return Fraction(value)
        if isinstance(value, Mod):
            if value.p != self.modulus:
                raise FieldMismatch(f"GF({value.p}) vs GF({self.modulus})")
            return value
        if isinstance(value, Fraction):
            return Mod(value.numerator, self.modulus) / Mod(value.denominator, self.modulus)
        return Mod(int(value), self.modulus)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def contains(self, x) -> bool:
        if self.modulus is None:
            return isinstance(x, (Fraction, int)) and not isinstance(x, bool)
        return isinstance(x, Mod) and x.p == self.modulus

    def elements(self) -> list:
        if self.modulus is None:
            raise ValueError("Q is infinite")
        return [Mod(k, self.modulus) for k in range(self.modulus)]

    def nonzero_elements(self) -> list:
        return [x for x in self.elements() if x]

    def sqrt(self, x) -> list:
        """All square roots of ``x`` lying in the field (possibly empty)."""
        x = self(x)
        if self.modulus is None:
            if x < 0:
                return []
            n, d = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
            if n is None or d is None:
                return []
            r = Fraction(n, d)
            return [r] if r == 0 else [r, -r]
        roots = [y for y in self.elements() if y * y == x]
        return roots

    def format(self, x) -> str:
        x = self(x)
        if self.modulus is None:
            return f"{x.numerator}/{x.denominator}"
        return f"{x.value} mod {self.modulus}"

    def parse(self, text: str):
        """Parse ``num/den``, an integer, or ``k mod p``."""
        text = text.strip()
        if " mod " in text:
            k, p = text.split(" mod ")
            if self.modulus is None or int(p) != self.modulus:
                raise FieldMismatch(f"scalar {text!r} does not belong to {self}")
            return Mod(int(k), self.modulus)
        try:
            return self(Fraction(text))
        except ValueError:
            raise ValueError(f"malformed scalar {text!r}") from None

    def __str__(self):
        return "Q" if self.modulus is None else f"GF({self.modulus})"

    @classmethod
    def from_string(cls, text: str) -> Field:
        text = text.strip()
        if text == "Q":
            return cls()
        if text.startswith("GF(") and text.endswith(")"):
            return cls(int(text[3:-1]))
        raise ValueError(f"unknown field {text!r}")


Q = Field()


def GF(p: int) -> Field:
    return Field(p)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def multiplicative_order(x) -> int:
    """Order of ``x`` in the unit group; 0 for elements of infinite order."""
    if not x:
        raise ZeroDivisionError("0 is not a unit")
    one = x ** 0 if isinstance(x, Mod) else Fraction(1)
    if isinstance(x, Fraction):
        return 1 if x == 1 else 2 if x == -1 else 0
    y, k = x, 1
    while y != one:
        y, k = y * x, k + 1
    return k


def primitive_root_of_unity(n: int, field: Field):
    """An element of exact order ``n`` or None when the field has none."""
    if n < 1:
        raise ValueError("n must be positive")
    if field.modulus is None:
        return {1: Fraction(1), 2: Fraction(-1)}.get(n)
    if (field.modulus - 1) % n:
        return None
    for x in field.nonzero_elements():
        if multiplicative_order(x) == n:
            return x
    return None


def random_scalar(field: Field, nonzero: bool = False, seed: int | None = None,
                  rng: random.Random | None = None, bound: int = 100):
    """Draw a scalar. Rationals have numerator and denominator bounded by ``bound``."""
    rng = rng if rng is not None else random.Random(seed)
    while True:
        if field.modulus is None:
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        else:
            x = Mod(rng.randrange(field.modulus), field.modulus)
        if x or not nonzero:
            return x


def field_of(x) -> Field:
    if isinstance(x, Mod):
        return Field(x.p)
    return Q


def field_arithmetic(a, b, op: str):
    if isinstance(a, Mod) != isinstance(b, Mod):
        raise FieldMismatch("cannot mix Q and GF(p)")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def nth_roots(x, n: int, field: Field) -> list:
    """All y in the field with y**n == x. Exact; rationals use integer roots."""
    x = field(x)
    if n < 1:
        raise ValueError("n must be positive")
    if field.is_finite:
        return [y for y in field.elements() if y ** n == x]
    if x == 0:
        return [x]
    sign = -1 if x < 0 else 1
    if sign < 0 and n % 2 == 0:
        return []
    num, den = _iroot(abs(x.numerator), n), _iroot(x.denominator, n)
    if num is None or den is None:
        return []
    r = Fraction(sign * num, den)
    return [r, -r] if n % 2 == 0 else [r]


def _iroot(m: int, n: int) -> int | None:
    lo, hi = 0, 1
    while hi ** n < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** n == m else None


def integer_image(values, field: Field):
    """Plain-int images of ``values`` when ring arithmetic on them stays exact.

    Residues mod p always qualify; rationals only when every value is integral.
    Returns ``(images, modulus)`` with modulus None over Q, or None when the
    values need genuine fractions.
    """
    if field.is_finite:
        return [v.value for v in values], field.modulus
    if all(v.denominator == 1 for v in values):
        return [v.numerator for v in values], None
    return None
