"""Coefficient domains for Laurent polynomial arithmetic.

Three domains are supported: the rationals ``QQ``, the integers ``ZZ`` and
prime fields ``GF(p)``.  Elements are plain Python values (rationals, ints,
ints reduced mod p), and all arithmetic goes through the domain object so
that the same polynomial code runs unchanged over each ring.

Rationals use ``gmpy2.mpq`` when available (an order of magnitude faster
than ``fractions.Fraction`` on the elimination workloads in this package)
and fall back to ``Fraction`` otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero, NotUnit, UnsupportedDomain

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _rational = Fraction


class Domain:
    """A commutative ring with exact element arithmetic.

    Subclasses fix the element representation; ``zero`` and ``one`` are
    canonical elements, and ``normalize`` maps any raw input (int, string,
    Fraction) into that representation.
    """

    name = "?"
    is_field = False
    characteristic = 0

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, fr):
        """Map a rational number into the domain; may fail over ZZ / GF(p)."""
        raise NotImplementedError

    def normalize(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (Fraction, type(_rational(0)))):
            return self.from_fraction(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div_exact(self, a, b):
        """a / b when b divides a exactly; NotDivisible otherwise."""
        raise NotImplementedError

    def content_unit(self, elems):
        """Invertible scalar that shrinks the representation of ``elems``.

        Rescaling a row by the returned scalar maps it to primitive
        integer form; None (the default) means no shrink is available.
        Exact elimination uses this to keep coefficient growth in check.
        """
        return None

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name


class RationalField(Domain):
    name = "Q"
    is_field = True

    def from_int(self, n):
        return _rational(n)

    def from_fraction(self, fr):
        return _rational(fr.numerator, fr.denominator)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotUnit("0 is not invertible")
        return 1 / _rational(a)

    def div_exact(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return _rational(a) / b

    def content_unit(self, elems):
        num_gcd = 0
        den_lcm = 1
        for c in elems:
            if c == 0:
                continue
            num_gcd = math.gcd(num_gcd, int(c.numerator))
            den = int(c.denominator)
            den_lcm = den_lcm // math.gcd(den_lcm, den) * den
        if num_gcd == 0 or (num_gcd == 1 and den_lcm == 1):
            return None
        return _rational(den_lcm, num_gcd)


class IntegerRing(Domain):
    name = "Z"
    is_field = False

    def from_int(self, n):
        return int(n)

    def from_fraction(self, fr):
        if fr.denominator != 1:
            raise UnsupportedDomain(f"{fr} is not an integer")
        return int(fr.numerator)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotUnit(f"{a} is not a unit in Z")

    def div_exact(self, a, b):
        from .errors import NotDivisible

        if b == 0:
            raise DivisionByZero("division by zero in Z")
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{b} does not divide {a} in Z")
        return q


class PrimeField(Domain):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise UnsupportedDomain(f"{p} is not prime")
        self.p = p
        self.name = f"Z/{p}"
        self.characteristic = p

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, fr):
        den = fr.denominator % self.p
        if den == 0:
            raise UnsupportedDomain(f"denominator of {fr} vanishes mod {self.p}")
        return fr.numerator * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise NotUnit(f"0 is not invertible mod {self.p}")
        return pow(a, -1, self.p)

    def div_exact(self, a, b):
        if b % self.p == 0:
            raise DivisionByZero(f"division by zero mod {self.p}")
        return a * pow(b, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


QQ = RationalField()
ZZ = IntegerRing()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field with p elements (instances are cached)."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def domain_from_spec(spec: str) -> Domain:
    """Parse a coefficient choice: ``Q``, ``Z`` or ``Zp:<p>``."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec == "Z":
        return ZZ
    if spec.startswith("Zp:"):
        return GF(int(spec[3:]))
    raise UnsupportedDomain(f"unknown coefficient spec {spec!r}")
