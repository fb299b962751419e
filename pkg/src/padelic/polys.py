"""Dense univariate polynomials over Q with exact Fraction coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd
from typing import List, Sequence, Tuple

from .padic import Rat, valp


@dataclass(frozen=True)
class RatPoly:
    """Polynomial sum(coeffs[i] * x^i) with no trailing zero leading coefficient."""

    coeffs: Tuple[Fraction, ...]

    @classmethod
    def make(cls, coeffs: Sequence[Rat]) -> "RatPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def constant(cls, c: Rat) -> "RatPoly":
        return cls.make([c])

    @classmethod
    def x_power(cls, n: int, c: Rat = 1) -> "RatPoly":
        return cls.make([0] * n + [c])

    @classmethod
    def binomial(cls, n: int) -> "RatPoly":
        """The binomial polynomial x(x-1)...(x-n+1)/n!."""
        poly = cls.constant(1)
        for k in range(n):
            poly = poly * cls.make([-k, 1])
        return poly * cls.constant(Fraction(1, factorial(n)))

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x: Rat) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly.make([
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)])

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        if self.is_zero() or other.is_zero():
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly.make(out)

    def scale(self, c: Rat) -> "RatPoly":
        return RatPoly.make([Fraction(c) * a for a in self.coeffs])

    def compose_linear(self, a: Rat, b: Rat = 0) -> "RatPoly":
        """The polynomial f(a*x + b)."""
        out = RatPoly.zero()
        lin = RatPoly.make([b, a])
        power = RatPoly.constant(1)
        for c in self.coeffs:
            out = out + power.scale(c)
            power = power * lin
        return out

    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def binomial_coeffs(self, length: int = None) -> List[Fraction]:
        """Coefficients b_n in f = sum b_n * binom(x, n), via finite differences."""
        if length is None:
            length = self.degree() + 1
        values = [self(i) for i in range(max(length, 0))]
        out = []
        for n in range(length):
            out.append(sum((-1) ** (n - k) * comb(n, k) * values[k] for k in range(n + 1)))
        return out

    def min_valuation_on_zp(self, p: int):
        """inf over Z_p of v_p(f(x)); equals the min binomial-basis coefficient valuation."""
        if self.is_zero():
            from .padic import INF
            return INF
        return min(valp(b, p) for b in self.binomial_coeffs())

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------
# tiny infix grammar: terms "a/b*x^n" joined by + and -


def parse_poly(text: str) -> RatPoly:
    """Parse e.g. ``1/2*x^2 - 1/2*x + 3``; no floating point accepted."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    # split into signed terms
    terms = []
    start = 0
    for i, ch in enumerate(text):
        if ch in "+-" and i > start and text[i - 1] not in "+-*/^":
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    coeffs = {}
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError("dangling sign in polynomial")
        coeff = Fraction(1)
        power = 0
        for factor in term.split("*"):
            if factor.startswith("x"):
                power += 1 if factor == "x" else int(factor[2:]) if factor[1] == "^" else _bad(factor)
            else:
                coeff *= Fraction(factor)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
    n = max(coeffs) + 1
    return RatPoly.make([coeffs.get(i, Fraction(0)) for i in range(n)])


def _bad(factor: str):
    raise ValueError(f"cannot parse factor {factor!r}")


def format_poly(f: RatPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for n in range(f.degree(), -1, -1):
        c = f.coeffs[n]
        if c == 0:
            continue
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            xpart = "x" if n == 1 else f"x^{n}"
            body = xpart if mag == 1 else f"{mag}*{xpart}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def poly_to_json(f: RatPoly) -> list:
    return [{"num": c.numerator, "den": c.denominator} for c in f.coeffs]


def poly_from_json(obj: list) -> RatPoly:
    return RatPoly.make([Fraction(c["num"], c["den"]) for c in obj])
