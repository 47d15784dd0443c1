"""Exact scalar arithmetic: the rationals and prime fields.

Scalars are plain values supporting +, -, *, /, ==, hash: `fractions.Fraction`
for the rationals, `Mod` for a prime field.  A field descriptor (`QQ` or a
`PrimeField` instance) creates scalars and carries the characteristic; all
linear algebra is generic over it.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Residue modulo a prime.  Immutable, hashable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return Mod(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero residue")
        return Mod(self.value * pow(other.value, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pow__(self, k: int):
        return Mod(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"


class Rationals:
    """Field descriptor for Q."""

    characteristic = 0
    name = "Q"

    def of(self, n) -> Fraction:
        return Fraction(n)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class PrimeField:
    """Field descriptor for F_p, p prime."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def of(self, n) -> Mod:
        if isinstance(n, Mod):
            if n.p != self.p:
                raise ValueError(f"mixed moduli {n.p} and {self.p}")
            return n
        if isinstance(n, Fraction):
            if n.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {n} vanishes mod {self.p}")
            return Mod(n.numerator, self.p) / Mod(n.denominator, self.p)
        return Mod(int(n), self.p)

    @property
    def zero(self) -> Mod:
        return Mod(0, self.p)

    @property
    def one(self) -> Mod:
        return Mod(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def field_from_name(name: str):
    """Map a field spec string ("Q", "F2", "F3", ...) to a field descriptor."""
    if name == "Q":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field {name!r} (expected Q or Fp with p prime)")


def format_scalar(x):
    """Serialize a scalar for JSON: rationals as "num/den", residues as int."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Mod):
        return x.value
    if isinstance(x, int):
        return f"{x}/1"
    raise TypeError(f"not a scalar: {x!r}")


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
