"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are kept in canonical form: the coefficient polynomial in
zeta_N is reduced modulo the N-th cyclotomic polynomial Phi_N, so two
values at the same conductor are equal iff their coefficient maps are
identical.  Mixed-conductor operations lift both operands to the lcm
conductor first; no minimal-conductor search is performed (it is not
needed for decidable equality).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ParseError

__all__ = [
    "Cyclotomic",
    "RootOfUnityExponent",
    "cyclotomic_polynomial",
    "divisors",
    "euler_phi",
    "parse",
    "render",
    "root_of_unity",
]


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


_PHI_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, as exact integers."""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    cached = _PHI_CACHE.get(n)
    if cached is not None:
        return cached
    # x^n - 1 divided by the product of Phi_d over proper divisors d.
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    for d in divisors(n):
        if d == n:
            continue
        num = _poly_div_exact(num, cyclotomic_polynomial(d))
    result = tuple(num)
    _PHI_CACHE[n] = result
    return result


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic up to its leading coefficient dividing exactly.
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r != 0:
            raise ArithmeticError("inexact polynomial division")
        out[i - dn] = q
        for j, dc in enumerate(den):
            num[i - dn + j] -= q * dc
    if any(num):
        raise ArithmeticError("nonzero remainder in cyclotomic division")
    return out


def _reduce_mod_phi(n: int, dense: list) -> dict[int, Fraction]:
    """Reduce a dense coefficient list modulo Phi_n; return sparse canonical map."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    coeffs = list(dense)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if not c:
            continue
        coeffs[i] = 0
        base = i - deg
        for j in range(deg):
            if phi[j]:
                coeffs[base + j] -= c * phi[j]
    out = {}
    for k in range(min(deg, len(coeffs))):
        c = coeffs[k]
        if c:
            out[k] = c if isinstance(c, Fraction) else Fraction(c)
    return out


class Cyclotomic:
    """An exact element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("_n", "_c")

    def __init__(self, conductor: int, coeffs, *, _canonical: bool = False):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        self._n = conductor
        if _canonical:
            self._c = dict(coeffs)
            return
        dense = [Fraction(0)] * conductor
        for k, c in coeffs.items():
            dense[k % conductor] += Fraction(c)
        self._c = _reduce_mod_phi(conductor, dense)

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, {}, _canonical=True)

    @classmethod
    def one(cls) -> "Cyclotomic":
        return cls.from_rational(1)

    @classmethod
    def from_rational(cls, value) -> "Cyclotomic":
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls(1, {0: value}, _canonical=True)

    # -- basic accessors ----------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def as_rational(self):
        """The value as a Fraction if it is rational, else None.

        The canonical form of a rational is the constant polynomial, at
        any conductor, so this is a direct structural check.
        """
        if not self._c:
            return Fraction(0)
        if set(self._c) == {0}:
            return self._c[0]
        return None

    # -- arithmetic ----------------------------------------------------

    def _lift_dense(self, m: int) -> list[Fraction]:
        step = m // self._n
        dense = [Fraction(0)] * m
        for k, c in self._c.items():
            dense[k * step] += c
        return dense

    def _lift_to(self, m: int) -> "Cyclotomic":
        target = lcm(self._n, m)
        if target == self._n:
            return self
        return Cyclotomic(
            target, _reduce_mod_phi(target, self._lift_dense(target)), _canonical=True
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self._n, other._n)
        a = self._lift_dense(n)
        for k, c in zip(range(n), other._lift_dense(n)):
            a[k] += c
        return Cyclotomic(n, _reduce_mod_phi(n, a), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self._n, {k: -c for k, c in self._c.items()}, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Cyclotomic.zero()
            q = Fraction(other)
            return Cyclotomic(
                self._n, {k: c * q for k, c in self._c.items()}, _canonical=True
            )
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self._n, other._n)
        a = self._lift_to(n)._c
        b = other._lift_to(n)._c
        dense = [Fraction(0)] * (2 * n)
        for ka, ca in a.items():
            for kb, cb in b.items():
                dense[ka + kb] += ca * cb
        return Cyclotomic(n, _reduce_mod_phi(n, dense), _canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta_N -> zeta_N^(-1)."""
        dense = [Fraction(0)] * self._n
        for k, c in self._c.items():
            dense[(-k) % self._n] += c
        return Cyclotomic(self._n, _reduce_mod_phi(self._n, dense), _canonical=True)

    # -- comparison and keys --------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self._n, other._n)
        return self._lift_to(n)._c == other._lift_to(n)._c

    __hash__ = None  # equality crosses conductors; use key_at() for pooling

    def key_at(self, conductor: int) -> tuple:
        """Hashable canonical key at a common conductor (a multiple of ours)."""
        if conductor % self._n != 0:
            raise ValueError(f"{conductor} is not a multiple of conductor {self._n}")
        lifted = self._lift_to(conductor)
        return tuple(
            (k, c.numerator, c.denominator) for k, c in sorted(lifted._c.items())
        )

    # -- conversions ------------------------------------------------------

    def __complex__(self) -> complex:
        return sum(
            (complex(c) * cmath.exp(2j * cmath.pi * k / self._n)
             for k, c in self._c.items()),
            0j,
        )

    def as_root_of_unity(self):
        """Return (order, exponent) if this value is exactly a root of unity."""
        if len(self._c) == 1:
            (k, c), = self._c.items()
            if c == 1:
                g = gcd(k, self._n) if k else self._n
                return (self._n // g, (k // g) if k else 0)
        # Roots whose canonical form is a proper sum (e.g. -1 at odd
        # conductors) need a scan; all roots of unity inside Q(zeta_N)
        # have order dividing lcm(2, N).
        order = lcm(2, self._n)
        for k in range(order):
            if self == root_of_unity(order, k):
                g = gcd(k, order) if k else order
                return (order // g, (k // g) if k else 0)
        return None

    def render(self) -> str:
        if not self._c:
            return "0"
        items = sorted(self._c.items())
        if len(items) == 1 and items[0][1] == 1 and items[0][0] > 0:
            k = items[0][0]
            g = gcd(k, self._n)
            return f"E({self._n // g})^{k // g}"
        parts = []
        for idx, (k, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = f"E({self._n})^{k}"
            else:
                body = f"{mag}*E({self._n})^{k}"
            if idx == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Cyclotomic({self.render()!r})"

    def to_json_obj(self) -> dict:
        return {
            "N": self._n,
            "terms": [
                [k, c.numerator, c.denominator] for k, c in sorted(self._c.items())
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Cyclotomic":
        n = int(obj["N"])
        coeffs: dict[int, Fraction] = {}
        for k, num, den in obj["terms"]:
            key = int(k) % n
            coeffs[key] = coeffs.get(key, Fraction(0)) + Fraction(int(num), int(den))
        return cls(n, coeffs)


def _coerce(value):
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.from_rational(value)
    return NotImplemented


def root_of_unity(n: int, k: int) -> Cyclotomic:
    """zeta_n^k as an exact cyclotomic value."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    k %= n
    dense = [Fraction(0)] * (k + 1)
    dense[k] = Fraction(1)
    return Cyclotomic(n, _reduce_mod_phi(n, dense), _canonical=True)


@dataclass(frozen=True)
class RootOfUnityExponent:
    """exp(2*pi*i*value/modulus), stored as integer data for hot loops."""

    modulus: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def __mul__(self, other: "RootOfUnityExponent") -> "RootOfUnityExponent":
        if self.modulus != other.modulus:
            m = lcm(self.modulus, other.modulus)
            return RootOfUnityExponent(
                m,
                self.value * (m // self.modulus) + other.value * (m // other.modulus),
            )
        return RootOfUnityExponent(self.modulus, self.value + other.value)

    def inverse(self) -> "RootOfUnityExponent":
        return RootOfUnityExponent(self.modulus, -self.value)

    def to_cyclotomic(self) -> Cyclotomic:
        return root_of_unity(self.modulus, self.value)


# -- string grammar ---------------------------------------------------------

_WS = " \t"


def parse(text: str) -> Cyclotomic:
    """Parse signed sums of terms ``c*E(N)^k`` with rational ``c``.

    Examples of accepted terms: ``E(7)^3``, ``1/2*E(4)^1``, ``-3``, ``2*E(5)``.
    """
    parser = _Parser(text)
    value = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError(f"unexpected character {text[parser.pos]!r}", parser.pos)
    return value


def render(value: Cyclotomic) -> str:
    return value.render()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_expr(self) -> Cyclotomic:
        total = Cyclotomic.zero()
        first = True
        while True:
            ch = self.peek()
            if first:
                sign = 1
                if ch in "+-":
                    sign = -1 if ch == "-" else 1
                    self.pos += 1
                first = False
            elif ch in "+-":
                sign = -1 if ch == "-" else 1
                self.pos += 1
            elif ch == "":
                break
            else:
                raise ParseError(f"expected '+' or '-', got {ch!r}", self.pos)
            term = self.parse_term()
            total = total + (term if sign > 0 else -term)
            if self.peek() == "":
                break
        return total

    def parse_term(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "E":
            return self.parse_root()
        coeff = self.parse_rational()
        if self.peek() == "*":
            self.pos += 1
            return self.parse_root() * coeff
        return Cyclotomic.from_rational(coeff)

    def parse_rational(self) -> Fraction:
        num = self.parse_nat()
        if self.peek() == "/":
            self.pos += 1
            den = self.parse_nat()
            if den == 0:
                raise ParseError("zero denominator", self.pos - 1)
            return Fraction(num, den)
        return Fraction(num)

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def parse_root(self) -> Cyclotomic:
        self.skip_ws()
        if not self.text.startswith("E(", self.pos):
            raise ParseError("expected 'E('", self.pos)
        self.pos += 2
        n = self.parse_nat()
        if n < 1:
            raise ParseError("conductor must be positive", self.pos)
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ")":
            raise ParseError("expected ')'", self.pos)
        self.pos += 1
        k = 1
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                self.pos += 1
                sign = -1
            k = sign * self.parse_nat()
        return root_of_unity(n, k)
