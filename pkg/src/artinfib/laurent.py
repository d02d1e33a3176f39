"""Laurent polynomials A[q, q^-1] with exact coefficient arithmetic.

A polynomial is a valuation together with a dense coefficient tuple; the
zero polynomial is the empty tuple with valuation 0.  Canonical form (no
zero coefficients at either end) is enforced by the constructor, so
equality and hashing are structural.

    >>> from artinfib.domains import QQ
    >>> p = LaurentPoly(QQ, 0, [1, -1, 1])
    >>> str(p)
    'q^2 - q + 1'
    >>> p * LaurentPoly(QQ, 0, [1, 1]) == LaurentPoly(QQ, 0, [1, 0, 0, 1])
    True
    >>> parse_poly("1/2*q^-3 + q", QQ).valuation
    -3
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .domains import QQ, Domain
from .errors import (
    DivisionByZero,
    NotDivisible,
    NotUnit,
    ParseError,
    UnsupportedDomain,
)


@dataclasses.dataclass(init=False, frozen=True)
class LaurentPoly:
    """Element of A[q, q^-1]: ``sum(coeffs[i] * q**(val+i))``."""

    domain: Domain
    val: int
    coeffs: tuple

    def __init__(self, domain, val, coeffs):
        if any(isinstance(c, float) for c in coeffs):
            raise TypeError("float coefficients are not exact; use Fraction")
        coeffs = [domain.normalize(c) if isinstance(c, (int, Fraction)) else c
                  for c in coeffs]
        lo = 0
        hi = len(coeffs)
        while lo < hi and domain.is_zero(coeffs[lo]):
            lo += 1
        while hi > lo and domain.is_zero(coeffs[hi - 1]):
            hi -= 1
        if lo == hi:
            val, coeffs = 0, ()
        else:
            val, coeffs = val + lo, tuple(coeffs[lo:hi])
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, domain):
        return cls(domain, 0, ())

    @classmethod
    def one(cls, domain):
        return cls(domain, 0, (domain.one,))

    @classmethod
    def q_power(cls, domain, k):
        return cls(domain, k, (domain.one,))

    @classmethod
    def constant(cls, domain, c):
        return cls(domain, 0, (domain.normalize(c),))

    @classmethod
    def from_dict(cls, domain, d):
        """Build from {exponent: coefficient}."""
        if not d:
            return cls.zero(domain)
        lo = min(d)
        hi = max(d)
        coeffs = [d.get(e, 0) for e in range(lo, hi + 1)]
        return cls(domain, lo, coeffs)

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        """Lowest exponent (0 for the zero polynomial, by convention)."""
        return self.val

    @property
    def degree(self) -> int:
        """Highest exponent (-1 for the zero polynomial, by convention)."""
        return self.val + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """degree - valuation; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, e: int):
        """Coefficient of q^e."""
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def items(self):
        """(exponent, coefficient) pairs, ascending, nonzero ends only."""
        return [(self.val + i, c) for i, c in enumerate(self.coeffs)]

    def is_unit(self) -> bool:
        """Unit of A[q,q^-1]: a single term with unit coefficient."""
        return len(self.coeffs) == 1 and self.domain.is_unit(self.coeffs[0])

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.domain is not other.domain and self.domain != other.domain:
            raise UnsupportedDomain(
                f"mixed domains {self.domain} and {other.domain}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        dom = self.domain
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.val, other.val)
        hi = max(self.degree, other.degree)
        coeffs = [dom.add(self.coeff(e), other.coeff(e))
                  for e in range(lo, hi + 1)]
        return LaurentPoly(dom, lo, coeffs)

    def __neg__(self):
        return LaurentPoly(self.domain, self.val,
                           [self.domain.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        dom = self.domain
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero(dom)
        out = [dom.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if dom.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = dom.add(out[i + j], dom.mul(a, b))
        return LaurentPoly(dom, self.val + other.val, out)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.one(self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        """Inverse of a unit c*q^k."""
        if not self.is_unit():
            raise NotUnit(f"{self} is not a unit of {self.domain}[q,q^-1]")
        return LaurentPoly(self.domain, -self.val,
                           (self.domain.inv(self.coeffs[0]),))

    def shift(self, k: int):
        """Multiply by q^k."""
        if self.is_zero():
            return self
        return LaurentPoly(self.domain, self.val + k, self.coeffs)

    def scale(self, c):
        c = self.domain.normalize(c) if isinstance(c, (int, Fraction)) else c
        return LaurentPoly(self.domain, self.val,
                           [self.domain.mul(c, a) for a in self.coeffs])

    def subs_neg_q(self):
        """Substitute q -> -q."""
        dom = self.domain
        coeffs = [c if (self.val + i) % 2 == 0 else dom.neg(c)
                  for i, c in enumerate(self.coeffs)]
        return LaurentPoly(dom, self.val, coeffs)

    def subs_q_inverse(self):
        """Substitute q -> q^-1."""
        return LaurentPoly(self.domain, -self.degree,
                           tuple(reversed(self.coeffs)))

    def evaluate(self, x):
        """Value at q = x (x must be invertible if valuation < 0)."""
        dom = self.domain
        x = dom.normalize(x) if isinstance(x, (int, Fraction)) else x
        acc = dom.zero
        for c in reversed(self.coeffs):
            acc = dom.add(dom.mul(acc, x), c)
        if self.val:
            base = x if self.val > 0 else dom.inv(x)
            for _ in range(abs(self.val)):
                acc = dom.mul(acc, base)
        return acc

    def divrem(self, other):
        """Division with remainder; needs a field.  span(r) < span(other)."""
        if not self.domain.is_field:
            raise UnsupportedDomain(
                f"division with remainder needs a field, not {self.domain}")
        return _divide(self, other, exact=False)

    def divexact(self, other):
        """Exact quotient; NotDivisible if ``other`` does not divide."""
        q, r = _divide(self, other, exact=True)
        if not r.is_zero():
            raise NotDivisible(f"({other}) does not divide ({self})")
        return q

    def normalized(self):
        """Split p = unit * monic with monic of valuation 0.

        Returns (unit, monic); the unit is c*q^val with c the leading
        coefficient.  Needs leading coefficient invertible.
        """
        if self.is_zero():
            raise DivisionByZero("cannot normalize the zero polynomial")
        dom = self.domain
        lead = self.coeffs[-1]
        if not dom.is_unit(lead):
            raise NotUnit(f"leading coefficient {dom.to_str(lead)} not a unit")
        inv = dom.inv(lead)
        monic = LaurentPoly(dom, 0, [dom.mul(inv, c) for c in self.coeffs])
        unit = LaurentPoly(dom, self.val, (lead,))
        return unit, monic

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)} over {self.domain}>"


def _divide(a: LaurentPoly, b: LaurentPoly, exact: bool):
    """Shared long division; quotient coefficient steps must be exact when
    ``exact`` (stops with the undivided part as remainder otherwise it would
    need fractions)."""
    dom = a.domain
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero():
        return LaurentPoly.zero(dom), LaurentPoly.zero(dom)
    rem = list(a.coeffs)
    blead = b.coeffs[-1]
    qcoeffs = {}
    # operate on exponent offsets relative to a.val, dividing from the top
    top = len(rem) - 1
    bspan = len(b.coeffs) - 1
    while top >= bspan:
        if dom.is_zero(rem[top]):
            top -= 1
            continue
        try:
            c = dom.div_exact(rem[top], blead)
        except NotDivisible:
            if exact:
                raise NotDivisible(
                    f"leading step {dom.to_str(rem[top])} / "
                    f"{dom.to_str(blead)} not exact over {dom}")
            raise  # unreachable for fields
        pos = top - bspan
        qcoeffs[pos] = c
        for j, bc in enumerate(b.coeffs):
            rem[pos + j] = dom.sub(rem[pos + j], dom.mul(c, bc))
        top -= 1
    qpoly = LaurentPoly.from_dict(
        dom, {a.val - b.val + k: v for k, v in qcoeffs.items()})
    rpoly = LaurentPoly(dom, a.val, rem)
    return qpoly, rpoly


# -- functional aliases and named constructions ------------------------


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.divexact(b)


def extremes_invertible(p: LaurentPoly) -> bool:
    """True iff p is nonzero and both extreme coefficients are units of A."""
    if p.is_zero():
        return False
    dom = p.domain
    return dom.is_unit(p.coeffs[0]) and dom.is_unit(p.coeffs[-1])


def q_bracket(n: int, domain: Domain = QQ) -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 1:
        raise ValueError(f"[n]_q needs n >= 1, got {n}")
    return LaurentPoly(domain, 0, [domain.one] * n)


_cyclo_int_cache: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def _cyclotomic_int(n: int) -> tuple[int, ...]:
    """Integer coefficient tuple of the n-th cyclotomic polynomial."""
    if n not in _cyclo_int_cache:
        from .domains import ZZ

        num = LaurentPoly(ZZ, 0, [-1] + [0] * (n - 1) + [1])  # q^n - 1
        for d in range(1, n):
            if n % d == 0:
                num = num.divexact(LaurentPoly(ZZ, 0, _cyclotomic_int(d)))
        assert num.val == 0
        _cyclo_int_cache[n] = tuple(int(c) for c in num.coeffs)
    return _cyclo_int_cache[n]


def cyclotomic_poly(n: int, domain: Domain = QQ) -> LaurentPoly:
    """The n-th cyclotomic polynomial mapped into ``domain``."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    return LaurentPoly(domain, 0, _cyclotomic_int(n))


DEFAULT_CYCLOTOMIC_BOUND = 120


def factor_cyclotomic(p: LaurentPoly, bound: int = DEFAULT_CYCLOTOMIC_BOUND):
    """Split p = unit * prod(Phi_n ^ mult) * remainder over the rationals.

    Returns ``(unit, factors, remainder)`` where ``factors`` is a sorted
    list of (n, multiplicity) with n <= bound, ``unit`` is c*q^k, and the
    monic valuation-0 ``remainder`` is coprime to every Phi_n tried.
    """
    if p.domain is not QQ and p.domain != QQ:
        raise UnsupportedDomain(
            "cyclotomic factorization is canonical over Q only")
    if p.is_zero():
        raise DivisionByZero("cannot factor the zero polynomial")
    unit_shift = p.val
    _, rem = p.normalized()
    lead = p.coeffs[-1]
    factors = []
    for n in range(1, bound + 1):
        phi = cyclotomic_poly(n, p.domain)
        if phi.span > rem.span:
            if rem.span == 0:
                break
            continue
        mult = 0
        while True:
            try:
                rem = rem.divexact(phi)
                mult += 1
            except NotDivisible:
                break
        if mult:
            factors.append((n, mult))
    # dividing monic by monic kept the remainder monic with valuation 0
    unit = LaurentPoly(p.domain, unit_shift, (lead,))
    return unit, factors, rem


# -- text format -------------------------------------------------------

_TOKEN_CHARS = set("+-*/^()q")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
        elif ch in _TOKEN_CHARS:
            tokens.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in polynomial")
    return tokens


class _Parser:
    """Recursive descent over +, -, *, /, ^, parentheses and q powers.

    ``/`` is exact polynomial division (so ``1/2`` works over Q and fails
    over Z); juxtaposition like ``2q^3`` multiplies.
    """

    def __init__(self, tokens, domain):
        self.tokens = tokens
        self.pos = 0
        self.domain = domain

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.pos}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            p = p + rhs if op == "+" else p - rhs
        return p

    def term(self):
        p = self.factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()[0]
                rhs = self.factor()
                if op == "*":
                    p = p * rhs
                else:
                    try:
                        p = p.divexact(rhs)
                    except (NotDivisible, DivisionByZero) as exc:
                        raise ParseError(str(exc)) from exc
            elif nxt in ("num", "q", "("):
                p = p * self.factor()
            else:
                return p

    def factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        p = self.primary()
        if sign < 0:
            p = -p
        return p

    def primary(self):
        kind = self.peek()
        if kind == "num":
            n = self.take()[1]
            return LaurentPoly.constant(self.domain, n)
        if kind == "q":
            self.take()
            e = 1
            if self.peek() == "^":
                self.take()
                e = self.signed_int()
            return LaurentPoly.q_power(self.domain, e)
        if kind == "(":
            self.take()
            p = self.expr()
            if self.peek() != ")":
                raise ParseError("missing closing parenthesis")
            self.take()
            if self.peek() == "^":
                self.take()
                e = self.signed_int()
                try:
                    p = p**e
                except NotUnit as exc:
                    raise ParseError(str(exc)) from exc
            return p
        if kind is None:
            raise ParseError("unexpected end of polynomial text")
        raise ParseError(f"unexpected token {kind!r}")

    def signed_int(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        tok = self.take()
        if tok[0] != "num":
            raise ParseError("expected integer exponent")
        return sign * tok[1]


def parse_poly(text: str, domain: Domain = QQ) -> LaurentPoly:
    """Parse textual syntax like ``1 - q + q^2`` or ``1/2*q^-3 + q``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    try:
        return _Parser(tokens, domain).parse()
    except IndexError:
        raise ParseError(f"unexpected end of input in {text!r}") from None


def _coeff_str(dom, c):
    """(is_negative, magnitude string) for display."""
    s = dom.to_str(c)
    if s.startswith("-"):
        return True, s[1:]
    return False, s


def format_poly(p: LaurentPoly) -> str:
    """Canonical text, descending exponents; parse_poly round-trips it."""
    if p.is_zero():
        return "0"
    dom = p.domain
    parts = []
    for e, c in reversed(p.items()):
        if dom.is_zero(c):
            continue
        neg, mag = _coeff_str(dom, c)
        if e == 0:
            body = mag
        else:
            qs = "q" if e == 1 else f"q^{e}"
            body = qs if mag == "1" else f"{mag}*{qs}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
