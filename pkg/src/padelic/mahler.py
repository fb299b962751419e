"""Series expansion of locally constant functions in p-ordering bases.

Coefficients follow the recursion c_n = phi(a_n) - sum_{k<n} c_k f_k(a_n),
computed modulo p^N throughout.  A truncated series is *certified* by an
exact sup-norm argument: the domain is cut into balls c + p^M' Z_p on which
phi is constant, and on each ball the finite-difference (binomial-basis)
coefficients of t -> phi(c) - S(c + p^M' t) all vanish modulo p^N, which is
equivalent to the difference having valuation >= N on the whole ball.  This
certifies agreement to p^-N at every residue of the domain at any depth.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .errors import CertificateFailed, NotCertified, PrecisionExhausted
from .ordering import POrdering, p_ordering
from .padic import INF, PAdicInt, Rat, default_precision, valp
from .sets import CompactSet, residues

Point = Union[int, Fraction]


@dataclass(frozen=True)
class StepFunction:
    """Locally constant function: residues mod p^modulus_exp -> values mod p^precision."""

    prime: int
    domain: CompactSet
    modulus_exp: int
    table: Dict[int, int]
    precision: int

    def __post_init__(self):
        keys = residues(self.domain, self.modulus_exp)
        if set(self.table) != keys:
            raise ValueError("table keys must be exactly the domain residues")
        mod = self.prime ** self.precision
        if any(not 0 <= v < mod for v in self.table.values()):
            raise ValueError("table values must be canonical residues")

    @classmethod
    def from_callable(cls, fn: Callable[[Rat], Rat], domain: CompactSet,
                      modulus_exp: int, n_prec: int = None) -> "StepFunction":
        """Sampling adaptor: tabulate fn on residues (approximation by uniform
        continuity; the table is the function actually expanded)."""
        if n_prec is None:
            n_prec = default_precision()
        p = domain.prime
        mod = p ** n_prec
        table = {}
        for r in residues(domain, modulus_exp):
            val = Fraction(fn(r))
            if valp(val, p) < 0:
                raise ValueError(f"value {val} at {r} is not a {p}-adic integer")
            table[r] = val.numerator * pow(val.denominator, -1, mod) % mod
        return cls(p, domain, modulus_exp, table, n_prec)

    def value_at(self, x: Point) -> int:
        mod = self.prime ** self.modulus_exp
        x = Fraction(x)
        key = x.numerator * pow(x.denominator, -1, mod) % mod if mod > 1 else 0
        return self.table[key]


@dataclass(frozen=True)
class MahlerSeries:
    """Truncated expansion sum c_n f_n over an ordering basis, mod p^precision."""

    ordering: POrdering
    coeffs: Tuple[int, ...]
    precision: int
    certified: bool
    certificate_depth: Optional[int] = None  # residue depth the certificate covers

    def length(self) -> int:
        return len(self.coeffs)


class _BasisEvaluator:
    """Modular evaluation of the ordering basis polynomials f_k at exact points."""

    def __init__(self, o: POrdering, n_prec: int):
        self.o = o
        self.p = o.prime
        self.n = n_prec
        self._exact = any(not isinstance(a, int) for a in o.points)
        self._dinv: List[Union[int, Fraction]] = [1]
        self._fill_denominators()

    def _fill_denominators(self):
        p, mod = self.p, self.p ** self.n
        for k in range(len(self._dinv), len(self.o.points)):
            if self._exact:
                d = Fraction(1)
                for j in range(k):
                    d *= Fraction(self.o.points[k]) - Fraction(self.o.points[j])
                unit = d / Fraction(p) ** self.o.w[k]
                inv = pow(unit.numerator, -1, mod) * unit.denominator % mod
            else:
                unit = 1
                for j in range(k):
                    diff = self.o.points[k] - self.o.points[j]
                    v = 0
                    while diff % p == 0:
                        diff //= p
                        v += 1
                    unit = unit * diff % mod
                inv = pow(unit, -1, mod)
            self._dinv.append(inv)

    def values(self, x: Point, n: int) -> List[int]:
        """[f_k(x) mod p^N for k = 0..n]; x must be an exact domain element."""
        self._fill_denominators()
        p, big_n = self.p, self.n
        if self._exact or not isinstance(x, int):
            return self._values_exact(Fraction(x), n)
        top = p ** (big_n + self.o.w[n] if n else big_n)
        out = [1]
        prefix = 1
        small = p ** big_n
        for k in range(1, n + 1):
            prefix = prefix * ((x - self.o.points[k - 1]) % top) % top
            wk = self.o.w[k]
            num = prefix % (p ** wk * small)
            out.append(num // p ** wk * self._dinv[k] % small)
        return out

    def _values_exact(self, x: Fraction, n: int) -> List[int]:
        p, small = self.p, self.p ** self.n
        out = [1]
        prefix = Fraction(1)
        for k in range(1, n + 1):
            prefix *= x - Fraction(self.o.points[k - 1])
            val = prefix / Fraction(p) ** self.o.w[k]
            r = val.numerator * pow(val.denominator, -1, small) % small
            out.append(r * self._dinv[k] % small)
        return out


def _default_length_cap(phi: StepFunction) -> int:
    p, m = phi.prime, phi.modulus_exp
    n = phi.precision
    return 2 * (n * p ** max(m - 1, 0) * (p - 1) + p ** m) + 16


def expand(phi: StepFunction, o: POrdering = None, n_prec: int = None,
           length_cap: int = None) -> MahlerSeries:
    """Certified expansion of a step function in the ordering basis of its domain.

    Expansion continues until p^modulus_exp consecutive coefficients vanish
    mod p^N and the exact ball-wise certificate passes; CertificateFailed is
    raised if the length cap is hit first.
    """
    if n_prec is None:
        n_prec = phi.precision
    if phi.precision < n_prec:
        raise PrecisionExhausted(
            f"function values carry {phi.precision} digits, {n_prec} requested")
    p = phi.prime
    domain = phi.domain
    finite = domain.is_finite()
    cap = len(domain.finite) - 1 if finite else (length_cap or _default_length_cap(phi))
    run_target = max(1, p ** phi.modulus_exp)
    # the greedy search may need residue depth ~ cap regardless of the
    # coefficient precision, so the ordering gets its own depth budget
    ord_prec = max(n_prec, cap + (0 if finite else domain.max_ball_exponent()) + 2)
    o = _ensure_ordering(domain, o, min(cap, 15), ord_prec)
    evaluator = _BasisEvaluator(o, n_prec)
    coeffs: List[int] = []
    small = p ** n_prec
    run = 0
    n = 0
    while n <= cap:
        if n > o.length():
            o = _ensure_ordering(domain, o, min(cap, 2 * o.length()), ord_prec)
            evaluator = _BasisEvaluator(o, n_prec)
        a_n = o.points[n]
        fvals = evaluator.values(a_n, n)
        c = phi.value_at(a_n) - sum(ck * fk for ck, fk in zip(coeffs, fvals))
        c %= small
        coeffs.append(c)
        run = run + 1 if c == 0 else 0
        done_finite = finite and n == cap
        if done_finite or (run >= run_target and run % run_target == 0):
            series = MahlerSeries(
                ordering=o, coeffs=tuple(coeffs), precision=n_prec, certified=False)
            if _certify(series, phi, evaluator):
                depth = n_prec + (o.w[n] if n else 0)
                return MahlerSeries(ordering=o, coeffs=tuple(coeffs),
                                    precision=n_prec, certified=True,
                                    certificate_depth=depth)
            if done_finite:
                raise CertificateFailed(
                    "finite-domain expansion does not reproduce the table")
        n += 1
    raise CertificateFailed(f"no certificate after {cap + 1} coefficients")


def _ensure_ordering(domain: CompactSet, o: Optional[POrdering], length: int,
                     n_prec: int) -> POrdering:
    if o is not None and o.length() >= length:
        return o
    longer = p_ordering(domain, max(length, o.length() if o else 0), n_prec)
    if o is not None and longer.points[:len(o.points)] != o.points:
        raise ValueError("supplied ordering is not the canonical greedy ordering")
    return longer


def _certify(s: MahlerSeries, phi: StepFunction, evaluator: _BasisEvaluator) -> bool:
    """Exact check that the partial sum matches phi to p^-N everywhere."""
    p, small = phi.prime, phi.prime ** s.precision
    top = s.length() - 1
    domain = phi.domain
    if domain.is_finite():
        for e in domain.finite:
            fvals = evaluator.values(e, top)
            total = sum(ck * fk for ck, fk in zip(s.coeffs, fvals)) % small
            if (total - phi.value_at(e)) % small:
                return False
        return True
    depth = max(phi.modulus_exp, domain.max_ball_exponent())
    step = p ** depth
    for c in residues(domain, depth):
        target = phi.table[c % p ** phi.modulus_exp if phi.modulus_exp else 0]
        diffs = []
        for i in range(top + 1):
            fvals = evaluator.values(c + step * i, top)
            total = sum(ck * fk for ck, fk in zip(s.coeffs, fvals))
            diffs.append((target - total) % small)
        # finite-difference table: all binomial-basis coefficients must vanish
        for _ in range(top + 1):
            if diffs[0] % small:
                return False
            diffs = [(b - a) % small for a, b in zip(diffs, diffs[1:])]
    return True


def evaluate(s: MahlerSeries, x: Union[PAdicInt, Rat]) -> PAdicInt:
    """Partial-sum value at a domain point, with honestly propagated precision."""
    p = s.ordering.prime
    out_prec = s.precision
    if isinstance(x, PAdicInt):
        w_top = s.ordering.w[s.length() - 1] if s.length() > 1 else 0
        out_prec = min(out_prec, x.precision - w_top)
        if out_prec < 1:
            raise PrecisionExhausted("argument has too few digits for this series")
        point: Point = x.residue
    else:
        point = x if isinstance(x, int) else Fraction(x)
    evaluator = _BasisEvaluator(s.ordering, s.precision)
    fvals = evaluator.values(point, s.length() - 1)
    total = sum(ck * fk for ck, fk in zip(s.coeffs, fvals)) % p ** out_prec
    return PAdicInt(p, total, out_prec)


def sup_norm_data(s: MahlerSeries, phi: StepFunction):
    """(inf_n v_p(c_n), inf_y v_p(phi(y))), both capped at the precision.

    The two infima must agree; a mismatch raises CertificateFailed rather
    than being returned silently.
    """
    if not s.certified:
        raise NotCertified("sup-norm data requires a certified series")
    p = s.ordering.prime
    coeff_inf = min((valp(c, p) for c in s.coeffs if c), default=INF)
    value_inf = min((valp(v, p) for v in phi.table.values() if v), default=INF)
    coeff_inf = min(coeff_inf, INF)
    if coeff_inf != value_inf:
        raise CertificateFailed(
            f"sup-norm identity violated: coefficients {coeff_inf}, values {value_inf}")
    return coeff_inf, value_inf


# ---------------------------------------------------------------------------
# adelic assembly and general-basis expansion


@dataclass(frozen=True)
class AdelicMahlerSeries:
    """Componentwise expansions against the per-prime parts of an adelic ordering."""

    per_prime: Dict[int, MahlerSeries]

    def length(self) -> int:
        return max((s.length() for s in self.per_prime.values()), default=0)

    def coefficient(self, n: int) -> Dict[int, int]:
        """The tracked components of the adelic coefficient c_n (default 0)."""
        return {p: (s.coeffs[n] if n < s.length() else 0)
                for p, s in self.per_prime.items()}

    def certified(self) -> bool:
        return all(s.certified for s in self.per_prime.values())


def expand_adelic(phis: Dict[int, StepFunction], ordering,
                  n_prec: Union[int, Dict[int, int], None] = None) -> AdelicMahlerSeries:
    """Expand one step function per tracked prime against an adelic ordering.

    Untracked components default to the zero function and contribute zero
    coefficients, so they are not materialized.
    """
    per = {}
    for p, phi in phis.items():
        seed = ordering.local.get(p) if ordering is not None else None
        local_prec = n_prec.get(p) if isinstance(n_prec, dict) else n_prec
        per[p] = expand(phi, seed, local_prec)
    return AdelicMahlerSeries(per_prime=per)


def expand_in_basis(phi: StepFunction, basis, n_prec: int = None) -> List[int]:
    """Coefficients of phi against an arbitrary regular basis of the local ring.

    The ordering-basis expansion is computed first and then converted through
    the (unit-diagonal) triangular change of basis; the recursion only applies
    to ordering bases.
    """
    s = expand(phi, None, n_prec)
    o = s.ordering
    p, small = o.prime, o.prime ** s.precision
    top = s.length() - 1
    if len(basis) < s.length():
        raise ValueError(f"need {s.length()} basis polynomials, got {len(basis)}")
    evaluator = _BasisEvaluator(o, s.precision)
    # t[n][k]: basis[n] = sum_k t[n][k] f_k, solved at the ordering points
    t: List[List[int]] = []
    for n in range(top + 1):
        row = []
        for j in range(n + 1):
            val = basis[n](Fraction(o.points[j]))
            r = val.numerator * pow(val.denominator, -1, small) % small
            fv = evaluator.values(o.points[j], j)
            r = (r - sum(row[k] * fv[k] for k in range(j))) % small
            row.append(r)
        t.append(row)
    out = [0] * (top + 1)
    for k in range(top, -1, -1):
        acc = (s.coeffs[k] - sum(out[n] * t[n][k] for n in range(k + 1, top + 1))) % small
        diag = t[k][k]
        if diag % p == 0:
            raise ValueError("basis is not regular for this set (non-unit diagonal)")
        out[k] = acc * pow(diag, -1, small) % small
    return out
