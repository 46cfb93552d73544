"""Exact integer arithmetic: factored integers, integer polynomials,
rational factor expressions and integer positivity certificates.

Everything here is pure and immutable.  All values stay exact; inexact
division anywhere raises instead of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

FACTORIZE_CAP = 2**64


class ExactnessError(ArithmeticError):
    """An operation that must be exact (division, formula evaluation) was not."""


class PositivityError(ArithmeticError):
    """A positivity certificate failed; carries the offending point."""

    def __init__(self, poly: "IntPoly", point: int, value: int):
        super().__init__(f"p({point}) = {value} <= 0 for p = {poly}")
        self.poly = poly
        self.point = point
        self.value = value


# ---------------------------------------------------------------------------
# factored integers


def _small_prime_factors(n: int) -> dict[int, int]:
    """Trial division with a 2/3/5 wheel; fine for the desk-scale inputs here."""
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # increments cycling through the residues coprime to 30
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += increments[i]
        i = (i + 1) % 8
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer held as its prime factorization.

    The empty factorization is 1.  Keys are primes in ascending order,
    exponents are >= 1.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p

    @staticmethod
    def from_map(factors: Mapping[int, int]) -> "FactoredInt":
        return FactoredInt(tuple(sorted((p, e) for p, e in factors.items() if e)))

    def as_map(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p**e
        return v

    def __int__(self) -> int:
        return self.value

    def __mul__(self, other: "FactoredInt") -> "FactoredInt":
        out = self.as_map()
        for p, e in other.factors:
            out[p] = out.get(p, 0) + e
        return FactoredInt.from_map(out)

    def divisible_by(self, other: "FactoredInt") -> bool:
        mine = self.as_map()
        return all(mine.get(p, 0) >= e for p, e in other.factors)

    def div_exact(self, other: "FactoredInt") -> "FactoredInt":
        if not self.divisible_by(other):
            raise ExactnessError(f"{other.value} does not divide {self.value}")
        out = self.as_map()
        for p, e in other.factors:
            out[p] -= e
        return FactoredInt.from_map(out)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        return format_factored(self)


ONE = FactoredInt()


def factorize(n: int) -> FactoredInt:
    """Factor a positive integer n <= 2**64 by trial division."""
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    if n > FACTORIZE_CAP:
        raise ValueError(f"factorize capped at 2**64, got {n}")
    if n == 1:
        return ONE
    return FactoredInt.from_map(_small_prime_factors(n))


def fi_mul(a: FactoredInt, b: FactoredInt) -> FactoredInt:
    return a * b


def fi_divides(a: FactoredInt, b: FactoredInt) -> bool:
    """True iff b divides a."""
    return a.divisible_by(b)


def fi_div_exact(a: FactoredInt, b: FactoredInt) -> FactoredInt:
    """a / b, which must be exact."""
    return a.div_exact(b)


def format_factored(n: FactoredInt) -> str:
    """Dot notation: 6048 -> '2^5.3^3.7'; 1 -> '1'."""
    if not n.factors:
        return "1"
    parts = []
    for p, e in n.factors:
        parts.append(f"{p}^{e}" if e > 1 else f"{p}")
    return ".".join(parts)


def parse_factored(text: str) -> FactoredInt:
    """Inverse of format_factored; also accepts a plain decimal integer."""
    text = text.strip()
    if text == "1":
        return ONE
    if "." not in text and "^" not in text:
        return factorize(int(text))
    out: dict[int, int] = {}
    for part in text.split("."):
        if "^" in part:
            p_s, e_s = part.split("^")
            p, e = int(p_s), int(e_s)
        else:
            p, e = int(part), 1
        if p < 2 or e < 1 or factorize(p).factors != ((p, 1),):
            raise ValueError(f"bad prime power {part!r} in {text!r}")
        out[p] = out.get(p, 0) + e
    return FactoredInt.from_map(out)


def is_prime_power(n: int) -> Optional[tuple[int, int]]:
    """(p, k) with p**k == n if n is a prime power, else None."""
    if n < 1:
        raise ValueError(f"is_prime_power needs a positive integer, got {n}")
    if n == 1:
        return None
    f = factorize(n).factors
    if len(f) == 1:
        return f[0]
    return None


def is_prime(n: int) -> bool:
    pk = is_prime_power(n) if n >= 2 else None
    return pk is not None and pk[1] == 1


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients ascending; () is the zero polynomial."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficient; normalize first")

    @staticmethod
    def of(*coeffs: int) -> "IntPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPoly(tuple(cs))

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly.of(c)

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly.of(0, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial gets -1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.of(
            *(
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            )
        )

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly.of(*out)

    def scale(self, k: int) -> "IntPoly":
        return IntPoly.of(*(k * c for c in self.coeffs))

    def shift_arg(self, c: int) -> "IntPoly":
        """p(x + c)."""
        out = IntPoly()
        for a in reversed(self.coeffs):
            out = out * IntPoly.of(c, 1) + IntPoly.const(a)
        return out

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# rational factor expressions

Atom = tuple[str, IntPoly]  # (symbol, polynomial in that symbol)


@dataclass(frozen=True)
class RationalExpr:
    """A quotient of products of one-symbol polynomial atoms.

    Kept in factored form; evaluation factorizes each atom value and
    cancels in the exponent lattice, so quotients are checked exact.
    """

    numerator: tuple[Atom, ...]
    denominator: tuple[Atom, ...] = ()

    def symbols(self) -> set[str]:
        return {s for s, _ in self.numerator} | {s for s, _ in self.denominator}

    def evaluate(self, env: Mapping[str, int]) -> FactoredInt:
        return eval_rational(self, env)


def _eval_atoms(atoms: Iterable[Atom], env: Mapping[str, int]) -> FactoredInt:
    out = ONE
    for sym, poly in atoms:
        if sym not in env and poly.degree > 0:
            raise KeyError(f"symbol {sym!r} not assigned")
        v = poly(env.get(sym, 0))
        if v == 0:
            raise ZeroDivisionError(f"atom {poly} in {sym} vanishes at {env}")
        if v < 0:
            raise ExactnessError(f"atom {poly} in {sym} is negative at {env}")
        out = out * factorize(v)
    return out


def eval_rational(expr: RationalExpr, env: Mapping[str, int]) -> FactoredInt:
    """Evaluate exactly; raise ExactnessError if the quotient is not integral."""
    num = _eval_atoms(expr.numerator, env)
    den = _eval_atoms(expr.denominator, env)
    return num.div_exact(den)


# ---------------------------------------------------------------------------
# positivity certificates


@dataclass(frozen=True)
class PositivityCertificate:
    """Proof that poly(q) > 0 for every integer q >= from_value.

    cauchy_bound B majorizes all real roots (B >= 1 + max|a_i| / a_lead),
    so beyond B the sign is the leading sign; the listed points cover
    [from_value, B] exhaustively.
    """

    poly: IntPoly
    from_value: int
    cauchy_bound: int
    checked_points: tuple[tuple[int, int], ...] = field(default=())

    def recheck(self) -> bool:
        p = self.poly
        if p.leading <= 0:
            return False
        if p.degree >= 1:
            top = max(abs(c) for c in p.coeffs[:-1])
            if self.cauchy_bound < 1 + math.ceil(top / p.leading):
                return False
            expect = list(range(self.from_value, self.cauchy_bound + 1))
            if [q for q, _ in self.checked_points] != expect:
                return False
        for q, v in self.checked_points:
            if p(q) != v or v <= 0:
                return False
        return True


def positivity_beyond(poly: IntPoly, from_value: int) -> PositivityCertificate:
    """Certify poly(q) > 0 for all integers q >= from_value.

    Requires a positive leading coefficient; raises PositivityError with
    the counterexample if some checked point is <= 0.
    """
    if poly.is_zero() or poly.leading <= 0:
        raise ValueError(f"positivity_beyond needs a positive leading coefficient: {poly}")
    if poly.degree == 0:
        # constant and positive: nothing to enumerate
        return PositivityCertificate(poly, from_value, from_value - 1, ())
    top = max(abs(c) for c in poly.coeffs[:-1])
    bound = 1 + math.ceil(top / poly.leading)
    points = []
    for q in range(from_value, bound + 1):
        v = poly(q)
        if v <= 0:
            raise PositivityError(poly, q, v)
        points.append((q, v))
    return PositivityCertificate(poly, from_value, bound, tuple(points))


@dataclass(frozen=True)
class NonvanishingCertificate:
    """Proof that poly(q) != 0 for every integer q >= from_value.

    Same Cauchy-bound scheme as PositivityCertificate, but the window
    values only need to be nonzero; beyond the bound the sign is the
    (positive) leading sign, in particular nonzero.
    """

    poly: IntPoly
    from_value: int
    cauchy_bound: int
    checked_points: tuple[tuple[int, int], ...] = field(default=())

    def recheck(self) -> bool:
        p = self.poly
        if p.leading <= 0:
            return False
        if p.degree >= 1:
            top = max(abs(c) for c in p.coeffs[:-1])
            if self.cauchy_bound < 1 + math.ceil(top / p.leading):
                return False
            expect = list(range(self.from_value, self.cauchy_bound + 1))
            if [q for q, _ in self.checked_points] != expect:
                return False
        return all(p(q) == v and v != 0 for q, v in self.checked_points)


def nonvanishing_beyond(poly: IntPoly, from_value: int) -> NonvanishingCertificate:
    """Certify poly(q) != 0 for all integers q >= from_value.

    The polynomial is sign-normalized first if its leading coefficient is
    negative; raises PositivityError at the first integer zero.
    """
    if poly.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    if poly.leading < 0:
        poly = -poly
    if poly.degree == 0:
        return NonvanishingCertificate(poly, from_value, from_value - 1, ())
    top = max(abs(c) for c in poly.coeffs[:-1])
    bound = 1 + math.ceil(top / poly.leading)
    points = []
    for q in range(from_value, bound + 1):
        v = poly(q)
        if v == 0:
            raise PositivityError(poly, q, v)
        points.append((q, v))
    return NonvanishingCertificate(poly, from_value, bound, tuple(points))
