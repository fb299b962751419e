"""Compact subsets of Z_p (ball unions / finite lists) and adelic products.

A ``CompactSet`` is either a finite disjoint union of balls ``c + p^k Z_p``
or a finite list of exact rationals with non-negative valuation.  An
``AdelicSet`` tracks finitely many primes explicitly and fills in every other
prime with one of two symbolic defaults: all of Z_p, or pZ_p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import EmptySet
from .padic import PAdicNumber, Rat, valp

#: Three-valued answer for membership queries at finite precision.
UNKNOWN = "unknown"

#: Symbolic default families for untracked primes.
FULL = "Zp"
PZP = "pZp"


@dataclass(frozen=True)
class CompactSet:
    """Compact subset of Z_p: ball union or finite exact set."""

    prime: int
    balls: Optional[Tuple[Tuple[int, int], ...]] = None  # (center, radius exponent)
    finite: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if (self.balls is None) == (self.finite is None):
            raise ValueError("exactly one of balls/finite must be given")

    @classmethod
    def from_balls(cls, p: int, balls: Sequence[Tuple[int, int]]) -> "CompactSet":
        return normalize(cls(p, balls=tuple((c, k) for c, k in balls)))

    @classmethod
    def from_finite(cls, p: int, elems: Sequence[Rat]) -> "CompactSet":
        return normalize(cls(p, finite=tuple(Fraction(x) for x in elems)))

    @classmethod
    def zp(cls, p: int) -> "CompactSet":
        return cls(p, balls=((0, 0),))

    @classmethod
    def pzp(cls, p: int) -> "CompactSet":
        return cls(p, balls=((0, 1),))

    def is_finite(self) -> bool:
        return self.finite is not None

    def max_ball_exponent(self) -> int:
        return max((k for _, k in self.balls), default=0) if self.balls else 0

    def __str__(self):
        if self.is_finite():
            return f"p={self.prime}; finite: " + ", ".join(str(x) for x in self.finite)
        return f"p={self.prime}; balls: " + ", ".join(
            f"{c}+p^{k}" for c, k in self.balls)


def normalize(s: CompactSet) -> CompactSet:
    """Canonical form: disjoint balls sorted by (k, center), or deduped finite list."""
    p = s.prime
    if s.is_finite():
        seen, out = set(), []
        for x in s.finite:
            if valp(x, p) < 0:
                raise ValueError(f"{x} has negative {p}-adic valuation")
            if x not in seen:
                seen.add(x)
                out.append(x)
        if not out:
            raise EmptySet("finite set with no elements")
        return CompactSet(p, finite=tuple(sorted(out)))
    if not s.balls:
        raise EmptySet("ball union with no balls")
    balls = {(c % p ** k, k) for c, k in s.balls}
    changed = True
    while changed:
        changed = False
        kept = set()
        for c, k in sorted(balls, key=lambda b: b[1]):  # shallow first
            if not any(k > k0 and c % p ** k0 == c0 for c0, k0 in kept):
                kept.add((c, k))
        # coalesce complete sibling families c' + p^k with common parent
        balls = kept
        for c, k in sorted(kept, key=lambda b: -b[1]):
            if k == 0 or (c, k) not in balls:
                continue
            parent = (c % p ** (k - 1), k - 1)
            family = {((parent[0] + t * p ** (k - 1)) % p ** k, k) for t in range(p)}
            if family <= balls:
                balls = (balls - family) | {parent}
                changed = True
    return CompactSet(p, balls=tuple(sorted(balls, key=lambda b: (b[1], b[0]))))


def residues(s: CompactSet, m: int) -> set:
    """Exactly the residues modulo p^m meeting the set."""
    if m < 0:
        raise ValueError("modulus exponent must be >= 0")
    p = s.prime
    mod = p ** m
    if s.is_finite():
        return {_rat_residue(x, p, mod) for x in s.finite}
    out = set()
    for c, k in s.balls:
        if k >= m:
            out.add(c % mod)
        else:
            step = p ** k
            out.update((c + step * t) % mod for t in range(p ** (m - k)))
    return out


def _rat_residue(x: Fraction, p: int, mod: int) -> int:
    if mod == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, mod) % mod


def count_mod_p(s: CompactSet) -> int:
    """Number of residues the set meets modulo p."""
    return len(residues(s, 1))


def contains(s: CompactSet, x: PAdicNumber):
    """Membership of a truncated p-adic number: True/False/UNKNOWN."""
    if s.prime != x.prime:
        raise ValueError("mixed primes")
    p = s.prime
    if not x.is_zero() and x.valuation < 0:
        return False
    depth = x.abs_precision()
    r = x.residue(depth)
    if s.is_finite():
        # a truncated number is never provably equal to a single point, so the
        # best decidable answers are False (no element consistent) and UNKNOWN
        if any(_rat_residue(e, p, p ** depth) == r for e in s.finite):
            return UNKNOWN
        return False
    decided = False
    maybe = False
    for c, k in s.balls:
        if k <= depth:
            if r % p ** k == c:
                decided = True
        elif r % p ** depth == c % p ** depth:
            maybe = True  # consistent with this ball, too few digits to decide
    if decided:
        return True
    return UNKNOWN if maybe else False


@dataclass(frozen=True)
class AdelicSet:
    """Product set over all primes: tracked components plus a symbolic default."""

    tracked: Dict[int, CompactSet] = field(default_factory=dict)
    default: str = FULL

    def __post_init__(self):
        if self.default not in (FULL, PZP):
            raise ValueError(f"unknown default family {self.default!r}")
        for p, comp in self.tracked.items():
            if comp.prime != p:
                raise ValueError(f"component at {p} built for prime {comp.prime}")

    def component(self, p: int) -> CompactSet:
        if p in self.tracked:
            return self.tracked[p]
        return CompactSet.zp(p) if self.default == FULL else CompactSet.pzp(p)

    def __str__(self):
        parts = [f"default={self.default}"]
        parts.extend(str(self.tracked[p]) for p in sorted(self.tracked))
        return "; ".join(parts)


def component(a: AdelicSet, p: int) -> CompactSet:
    return a.component(p)


# ---------------------------------------------------------------------------
# set-description DSL


def parse_set(text: str) -> CompactSet:
    """Parse ``p=INT; balls: c+p^k, ...`` or ``p=INT; finite: r, ...``."""
    head, _, body = text.partition(";")
    head = head.strip()
    if not head.startswith("p="):
        raise ValueError(f"set description must start with 'p=': {text!r}")
    p = int(head[2:])
    body = body.strip()
    if body.startswith("balls:"):
        balls = []
        for item in body[len("balls:"):].split(","):
            center, _, radius = item.partition("+")
            radius = radius.strip()
            if not radius.startswith("p^"):
                raise ValueError(f"bad ball {item!r}, expected 'c+p^k'")
            balls.append((int(center.strip()), int(radius[2:])))
        return CompactSet.from_balls(p, balls)
    if body.startswith("finite:"):
        elems = [Fraction(item.strip()) for item in body[len("finite:"):].split(",")]
        return CompactSet.from_finite(p, elems)
    raise ValueError(f"expected 'balls:' or 'finite:' in {text!r}")


def parse_adelic(text: str) -> AdelicSet:
    """Parse ``default=Zp|pZp`` followed by optional per-prime set clauses."""
    chunks = [c.strip() for c in text.split(";") if c.strip()]
    if not chunks or not chunks[0].startswith("default="):
        raise ValueError(f"adelic description must start with 'default=': {text!r}")
    default = chunks[0][len("default="):].strip()
    tracked: Dict[int, CompactSet] = {}
    i = 1
    while i < len(chunks):
        if not chunks[i].startswith("p="):
            raise ValueError(f"expected 'p=' clause, got {chunks[i]!r}")
        if i + 1 >= len(chunks):
            raise ValueError(f"dangling clause {chunks[i]!r}")
        comp = parse_set(chunks[i] + "; " + chunks[i + 1])
        if comp.prime in tracked:
            raise ValueError(f"prime {comp.prime} tracked twice")
        tracked[comp.prime] = comp
        i += 2
    return AdelicSet(tracked=tracked, default=default)


def set_to_json(s: CompactSet) -> dict:
    if s.is_finite():
        return {"p": s.prime,
                "finite": [{"num": x.numerator, "den": x.denominator} for x in s.finite]}
    return {"p": s.prime, "balls": [{"center": c, "k": k} for c, k in s.balls]}


def set_from_json(obj: dict) -> CompactSet:
    if "finite" in obj:
        return CompactSet.from_finite(
            obj["p"], [Fraction(e["num"], e["den"]) for e in obj["finite"]])
    return CompactSet.from_balls(obj["p"], [(b["center"], b["k"]) for b in obj["balls"]])


def adelic_to_json(a: AdelicSet) -> dict:
    return {"default": a.default,
            "tracked": {str(p): set_to_json(a.tracked[p]) for p in sorted(a.tracked)}}


def adelic_from_json(obj: dict) -> AdelicSet:
    tracked = {int(p): set_from_json(s) for p, s in obj.get("tracked", {}).items()}
    return AdelicSet(tracked=tracked, default=obj.get("default", FULL))
