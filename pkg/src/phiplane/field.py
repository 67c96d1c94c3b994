"""Exact arithmetic in the quadratic field Q(phi), phi the golden mean.

Elements are stored as a + b*phi with rational a, b.  Since phi is
irrational the representation is unique, and phi**2 = phi + 1 reduces
every product back to this normal form.  All comparisons are exact; a
high-precision rational embedding is available for rendering and test
oracles but is never used to decide a branch.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt
from typing import Iterator, Tuple

RationalLike = int | Fraction


class FieldError(ZeroDivisionError):
    """Division by zero in Q(phi)."""


class QPhi:
    """An exact element a + b*phi of Q(phi)."""

    __slots__ = ("a", "b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("QPhi is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def coerce(cls, x: "QPhi | RationalLike") -> "QPhi":
        if isinstance(x, QPhi):
            return x
        return cls(x)

    @classmethod
    def from_ints(cls, parts: Tuple[int, int, int, int] | list) -> "QPhi":
        an, ad, bn, bd = (int(p) for p in parts)
        return cls(Fraction(an, ad), Fraction(bn, bd))

    def to_ints(self) -> Tuple[int, int, int, int]:
        """Serialize as four integers [a_num, a_den, b_num, b_den]."""
        return (self.a.numerator, self.a.denominator,
                self.b.numerator, self.b.denominator)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "QPhi | RationalLike") -> "QPhi":
        o = QPhi.coerce(other)
        return QPhi(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: "QPhi | RationalLike") -> "QPhi":
        o = QPhi.coerce(other)
        return QPhi(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: "QPhi | RationalLike") -> "QPhi":
        return QPhi.coerce(other) - self

    def __neg__(self) -> "QPhi":
        return QPhi(-self.a, -self.b)

    def __mul__(self, other: "QPhi | RationalLike") -> "QPhi":
        o = QPhi.coerce(other)
        # (a1 + b1 p)(a2 + b2 p) with p**2 = p + 1
        return QPhi(self.a * o.a + self.b * o.b,
                    self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    def inverse(self) -> "QPhi":
        # conjugate is (a + b) - b*phi, norm a**2 + a*b - b**2
        n = self.a * self.a + self.a * self.b - self.b * self.b
        if n == 0:
            raise FieldError("division by zero in Q(phi)")
        return QPhi((self.a + self.b) / n, -self.b / n)

    def __truediv__(self, other: "QPhi | RationalLike") -> "QPhi":
        return self * QPhi.coerce(other).inverse()

    def __rtruediv__(self, other: "QPhi | RationalLike") -> "QPhi":
        return QPhi.coerce(other) * self.inverse()

    # -- order --------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value a + b*phi."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        sb = 1 if b > 0 else -1
        r = -a / b
        if r < 0:
            return sb  # phi > 0 >= r
        # for r >= 0: r < phi  iff  r**2 - r - 1 < 0
        d = r * r - r - 1
        if d == 0:  # impossible: phi is irrational
            return 0
        return sb if d < 0 else -sb

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QPhi, int, Fraction)):
            o = QPhi.coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other: "QPhi | RationalLike") -> bool:
        return (self - QPhi.coerce(other)).sign() < 0

    def __le__(self, other: "QPhi | RationalLike") -> bool:
        return (self - QPhi.coerce(other)).sign() <= 0

    def __gt__(self, other: "QPhi | RationalLike") -> bool:
        return (self - QPhi.coerce(other)).sign() > 0

    def __ge__(self, other: "QPhi | RationalLike") -> bool:
        return (self - QPhi.coerce(other)).sign() >= 0

    def __abs__(self) -> "QPhi":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- floor / fractional part --------------------------------------

    def floor_frac(self) -> Tuple[int, "QPhi"]:
        """Return (n, f) with n <= x < n+1 and f = x - n, exactly.

        Brackets phi between consecutive Fibonacci convergents and
        narrows until the bracket of a + b*phi contains no integer
        boundary; terminates because the value is irrational when b != 0.
        """
        a, b = self.a, self.b
        if b == 0:
            n = floor(a)
            return n, QPhi(a - n)
        for lo, hi in _phi_brackets():
            if b > 0:
                vlo, vhi = a + b * lo, a + b * hi
            else:
                vlo, vhi = a + b * hi, a + b * lo
            nlo, nhi = floor(vlo), floor(vhi)
            if nlo == nhi:
                return nlo, self - nlo
        raise AssertionError("unreachable")  # pragma: no cover

    def __floor__(self) -> int:
        return self.floor_frac()[0]

    def frac(self) -> "QPhi":
        return self.floor_frac()[1]

    # -- embedding (rendering / oracles only) -------------------------

    def approx(self, bits: int = 200) -> Fraction:
        """Rational approximation within 2**-bits, for oracles and output."""
        root = isqrt(5 << (2 * bits))  # floor(sqrt(5) * 2**bits)
        lo = Fraction((1 << bits) + root, 1 << (bits + 1))
        hi = Fraction((1 << bits) + root + 1, 1 << (bits + 1))
        mid = (lo + hi) / 2
        return self.a + self.b * mid

    _PHI_FLOAT = 1.618033988749894848

    def __float__(self) -> float:
        # fast double-precision embedding: rendering and sort keys only,
        # never branch decisions
        return self.a.__float__() + self.b.__float__() * QPhi._PHI_FLOAT

    # -- misc ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"QPhi({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*phi"
        return f"{self.a}{'+' if self.b > 0 else ''}{self.b}*phi"


def _phi_brackets() -> Iterator[Tuple[Fraction, Fraction]]:
    """Nested rational brackets of phi from Fibonacci quotients."""
    f0, f1 = 1, 1
    lo, hi = Fraction(1), Fraction(2)
    while True:
        yield lo, hi
        f0, f1 = f1, f0 + f1
        q = Fraction(f1 + f0, f1)  # F_{k+2}/F_{k+1}, alternates around phi
        if q * q > q + 1:
            hi = q
        else:
            lo = q

PHI = QPhi(0, 1)
ONE = QPhi(1)
ZERO = QPhi(0)
HALF = QPhi(Fraction(1, 2))


def phi_power(k: int) -> QPhi:
    """phi**k = F_k * phi + F_{k-1}, Fibonacci extended to negative k."""
    fk, fk1 = _fib_pair(k)
    return QPhi(fk1, fk)


def _fib_pair(k: int) -> Tuple[int, int]:
    """Return (F_k, F_{k-1}) for any integer k."""
    if k >= 0:
        a, b = 0, 1  # F_0, F_-1
        for _ in range(k):
            a, b = a + b, a
        return a, b
    # F_{-n} = (-1)**(n+1) F_n
    n = -k
    fn, fn1 = _fib_pair(n)       # F_n, F_{n-1}
    f_neg = fn if n % 2 == 1 else -fn                  # F_{-n}
    f_neg_m1 = -(fn + fn1) if n % 2 == 1 else (fn + fn1)  # F_{-n-1}
    return f_neg, f_neg_m1


def sign(x: QPhi) -> int:
    return x.sign()


def floor_frac(x: QPhi) -> Tuple[int, QPhi]:
    return x.floor_frac()
