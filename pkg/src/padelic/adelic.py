"""Adelic points, polynomials with adelic coefficients, and adelic orderings.

Untracked components are uniform: an adelic point carries one rational value
for every untracked prime, and the canonical ordering uses the diagonal
sequence 0, 1, 2, ... there, which is simultaneously a p-ordering of Z_p for
every prime.  Only the finitely many exception primes where a step product
fails to be a unit are ever materialized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .errors import NoAdelicOrdering, PrecisionExhausted
from .ordering import POrdering, basis_rational, p_ordering
from .padic import PAdicInt, PAdicNumber, Rat, default_precision, embed, valp
from .polys import RatPoly
from .sets import FULL, PZP, AdelicSet, CompactSet
from .utils import primes_up_to


@dataclass(frozen=True)
class AdelicPoint:
    """Element of the adelic product: tracked components plus a diagonal default."""

    tracked: Dict[int, PAdicInt]
    default: Fraction

    def component_value(self, p: int) -> Rat:
        """Exact rational representative of the p-component (tracked: residue)."""
        if p in self.tracked:
            return self.tracked[p].residue
        return self.default


@dataclass(frozen=True)
class AdelicPoly:
    """Polynomial with adelic coefficients, materialized at finitely many primes."""

    degree: int
    tracked: Dict[int, Tuple[PAdicNumber, ...]]
    default: RatPoly
    integral_elsewhere: bool
    exact_tracked: Dict[int, RatPoly] = field(default_factory=dict)

    def component(self, p: int) -> RatPoly:
        """Exact rational form of the p-component where available."""
        if p in self.exact_tracked:
            return self.exact_tracked[p]
        if p in self.tracked:
            raise PrecisionExhausted(f"component at {p} only known to finite precision")
        return self.default


@dataclass(frozen=True)
class AdelicOrdering:
    """Sequence of adelic points that is a p-ordering in every component."""

    set: AdelicSet
    points: Tuple[AdelicPoint, ...]
    local: Dict[int, POrdering]
    exceptions: Tuple[Tuple[int, ...], ...]  # per index: primes with positive step valuation
    precision: int

    def length(self) -> int:
        return len(self.points)

    def w(self, p: int, n: int) -> int:
        """Step valuation of the p-component at index n."""
        if p in self.local:
            return self.local[p].w[n]
        if self.set.default == FULL:
            from .utils import v_of_factorial
            return v_of_factorial(n, p)
        raise NoAdelicOrdering("no ordering data for untracked pZ_p components")

    def point_value(self, p: int, n: int) -> Rat:
        if p in self.local:
            return self.local[p].points[n]
        return self.points[n].default


def adelic_ordering(a: AdelicSet, length: int, n_prec: int = None) -> AdelicOrdering:
    """Adelic ordering with `length` points (indices 0..length-1).

    Tracked components come from the greedy per-prime orderings; untracked
    components are the diagonal sequence 0, 1, 2, ...
    """
    if n_prec is None:
        n_prec = default_precision()
    if length < 1:
        raise ValueError("length must be >= 1")
    if a.default == PZP and length >= 2:
        raise NoAdelicOrdering(
            "pZ_p default gives step valuation >= 1 at every untracked prime")
    top = length - 1
    local = {p: p_ordering(comp, top, n_prec) for p, comp in a.tracked.items()}
    points = []
    for n in range(length):
        tracked_pts = {p: PAdicInt(p, local[p].point_residues()[n], n_prec)
                       for p in local}
        points.append(AdelicPoint(tracked=tracked_pts, default=Fraction(n)))
    exceptions = []
    for n in range(length):
        exc = {p for p in primes_up_to(n) if p not in a.tracked}
        exc.update(p for p in local if local[p].w[n] > 0)
        exceptions.append(tuple(sorted(exc)))
    return AdelicOrdering(set=a, points=tuple(points), local=local,
                          exceptions=tuple(exceptions), precision=n_prec)


def adelic_basis(o: AdelicOrdering, n: int) -> AdelicPoly:
    """Degree-n element of the regular basis attached to the ordering.

    The default component is the binomial polynomial; exception primes of
    index n (where it is not p-integral) get explicit tracked components.
    """
    if n > o.length() - 1:
        raise ValueError(f"degree {n} exceeds ordering length {o.length()}")
    default = RatPoly.binomial(n)
    exact: Dict[int, RatPoly] = {}
    for p, ordering in o.local.items():
        exact[p] = basis_rational(ordering, n)
    for p in primes_up_to(n):
        if p not in exact:
            exact[p] = default  # diagonal component, written explicitly at p
    tracked = {p: tuple(embed(c, p, o.precision) for c in f.coeffs)
               for p, f in exact.items()}
    return AdelicPoly(degree=n, tracked=tracked, default=default,
                      integral_elsewhere=True, exact_tracked=exact)


def adelic_membership(g: AdelicPoly, o: AdelicOrdering) -> bool:
    """Value criterion: g is integer-valued iff g(alpha_k) is integral, k <= deg."""
    if g.degree > o.length() - 1:
        raise ValueError("ordering too short for the degree of g")
    covered = set(g.tracked) | set(o.local)
    for k in range(g.degree + 1):
        for p in covered:
            f_p = g.component(p)
            x = o.point_value(p, k) if p in o.local else Fraction(k)
            if valp(f_p(x), p) < 0:
                return False
        value = g.default(Fraction(k))
        for q in _prime_factors(value.denominator):
            if q not in covered:
                return False  # non-integral at an untracked prime
    return True


def _prime_factors(n: int) -> set:
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def poly_as_adelic(f: RatPoly, o: AdelicOrdering) -> AdelicPoly:
    """Re-read a rational polynomial as an adelic polynomial (equal components)."""
    primes = set(o.local) | _prime_factors(f.denominator())
    exact = {p: f for p in primes}
    tracked = {p: tuple(embed(c, p, o.precision) for c in f.coeffs) for p in primes}
    return AdelicPoly(degree=max(f.degree(), 0), tracked=tracked, default=f,
                      integral_elsewhere=not _prime_factors(f.denominator()) - primes,
                      exact_tracked=exact)


def scale_into_z(components: Dict[int, Sequence[Tuple[Rat, int]]]
                 ) -> Tuple[int, AdelicSet]:
    """Minimal d with d*E inside the integral adeles, plus the scaled set.

    Input components are ball unions in Q_p, given as (center, radius
    exponent) with rational centers of possibly negative valuation.
    """
    exps = {}
    for p, balls in components.items():
        if not balls:
            raise ValueError(f"empty component at {p}")
        low = min(min(valp(Fraction(c), p), k) if Fraction(c) != 0 else k
                  for c, k in balls)
        exps[p] = max(0, -low)
    d = 1
    for p, e in sorted(exps.items()):
        d *= p ** e
    tracked = {}
    for p, balls in components.items():
        scaled = []
        for c, k in balls:
            k2 = k + exps[p]
            c2 = Fraction(c) * d
            mod = p ** k2
            scaled.append((c2.numerator * pow(c2.denominator, -1, mod) % mod if mod > 1
                           else 0, k2))
        tracked[p] = CompactSet.from_balls(p, scaled)
    return d, AdelicSet(tracked=tracked, default=FULL)


def conjugate_poly(f: RatPoly, d: int, d1: int) -> RatPoly:
    """The polynomial (1/d1) * f(d*x), exactly."""
    if d < 1 or d1 < 1:
        raise ValueError("scaling factors must be positive")
    return f.compose_linear(d).scale(Fraction(1, d1))
