"""Global solver for a x^2 + b y^2 = 1 over Q: decide solvability from the
local symbol vector, and when solvable produce an exact rational point by
Legendre descent.  Includes the ternary variant a x^2 + b y^2 + c z^2 = 0
and the global norm test for quadratic extensions.

The descent works on triples (x, y, s) with a x^2 + b y^2 = s^2, moved
between the forms <a, b> and <a, c> through a frame d^2 - a = b c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from qrlab.hilbert import hilbert_vector
from qrlab.rational import (
    Place,
    Rat,
    _sqrt_mod_squarefree_general,
    factorize,
    is_rational_square,
    sqrt_mod_squarefree,
    squarefree_split,
)

Triple = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class DescentFrame:
    """Nonzero integers a, b, c and d in [0, |b|/2] with d^2 - a = b c."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if 0 in (self.a, self.b, self.c):
            raise ValueError("frame coefficients must be nonzero")
        if self.d * self.d - self.a != self.b * self.c:
            raise ValueError("frame identity d^2 - a = b c fails")
        if not 0 <= 2 * self.d <= abs(self.b):
            raise ValueError("d must lie in [0, |b|/2]")


def descent_step(frame: DescentFrame, sol, direction: str) -> Triple:
    """Move a solution between a x^2 + b y^2 = s^2 (the S side) and
    a w^2 + c z^2 = t^2 (the T side); the two directions are mutually
    inverse up to scaling by the nonzero constant d^2 - a."""
    x, y, s = (Fraction(t) for t in sol)
    if x == y == s == 0:
        raise ValueError("the zero triple is not a projective solution")
    a, b, c, d = frame.a, frame.b, frame.c, frame.d
    if direction == "forward":
        if a * x * x + b * y * y != s * s:
            raise ValueError("input does not solve a x^2 + b y^2 = s^2")
        return (d * x + s, b * y, a * x + d * s)
    if direction == "backward":
        if a * x * x + c * y * y != s * s:
            raise ValueError("input does not solve a w^2 + c z^2 = t^2")
        return (d * x - s, c * y, -a * x + d * s)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class ConicCertificate:
    """Outcome of solve_conic: an exact point or the even set of places
    carrying the local obstruction."""

    a: Fraction
    b: Fraction
    outcome: str  # "solution" | "obstruction"
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None
    places: tuple = ()
    descent_depth: int = 0

    def verify(self) -> bool:
        if self.outcome == "solution":
            return self.a * self.x ** 2 + self.b * self.y ** 2 == 1
        from qrlab.hilbert import hilbert_symbol

        return (
            len(self.places) > 0
            and len(self.places) % 2 == 0
            and all(hilbert_symbol(self.a, self.b, v) == -1 for v in self.places)
        )

    def to_json(self) -> dict:
        def enc(q):
            if q is None:
                return None
            q = Fraction(q)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return {
            "a": enc(self.a),
            "b": enc(self.b),
            "outcome": self.outcome,
            "x": enc(self.x),
            "y": enc(self.y),
            "places": [v.json_value() for v in self.places],
        }


# ---------------------------------------------------------------------------
# the descent itself

_MAX_DEPTH = 64


def _smallest_frame_d(a: int, b: int) -> int:
    """The least d in [0, |b|/2] with d^2 = a (mod |b|)."""
    m = abs(b)
    if m == 1:
        return 0
    d = _sqrt_mod_squarefree_general(a % m, m)
    assert d is not None, (a, b)
    return d


def _isotropic_to_point(a, b, x0, y0) -> tuple[Fraction, Fraction]:
    """From a x0^2 + b y0^2 = 0 with x0 y0 != 0 to a point on ax^2+by^2=1:
    the line through the isotropic direction meets the conic again."""
    # with u = 1: t = (1 - b)/(2 b y0), point (t x0, t y0 + 1)
    assert b != 1
    t = (1 - Fraction(b)) / (2 * b * y0)
    return t * x0, t * y0 + 1


def _descent(a: int, b: int, depth: int = 0) -> tuple[Fraction, Fraction, int]:
    """Exact point on a x^2 + b y^2 = 1 for squarefree integers a, b whose
    symbol vector is everywhere +1; returns (x, y, max depth reached)."""
    assert depth < _MAX_DEPTH, "descent failed to terminate"
    if a == 1:
        return Fraction(1), Fraction(0), depth
    if b == 1:
        return Fraction(0), Fraction(1), depth
    if abs(a) > abs(b):
        y, x, d = _descent(b, a, depth)
        return x, y, d
    # |a| <= |b|, |b| >= 2: the local conditions provide d with d^2 = a (|b|)
    d = _smallest_frame_d(a, b)
    if d * d == a:
        return Fraction(1, d), Fraction(0), depth
    c = (d * d - a) // b
    e = factorize(c).squarefree_part()
    f = factorize(c).square_divisor_root()
    # solve the lighter form <a, e>, lift to <a, c>, and step back to <a, b>
    X, Y, reached = _descent(a, e, depth + 1)
    frame = DescentFrame(a, b, c, d)
    w, z, t = X, Y / f, Fraction(1)
    x, y, s = descent_step(frame, (w, z, t), "backward")
    if s != 0:
        return x / s, y / s, reached
    return (*_isotropic_to_point(a, b, x, y), reached)


def _canonical_point(x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    """Among the four sign flips, the lexicographically least with x >= 0."""
    return abs(x), -abs(y)


def solve_conic(a: Rat, b: Rat) -> ConicCertificate:
    """Hasse-Minkowski for the conic a x^2 + b y^2 = 1: an exact rational
    point when every local symbol is +1, the obstruction places otherwise."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("coefficients must be nonzero")
    vector = hilbert_vector(a, b)
    if vector.minus_places:
        cert = ConicCertificate(a, b, "obstruction", places=vector.support)
        assert cert.verify()
        return cert
    # scale to squarefree integers: a x^2 = a0 (sa x)^2
    a0, sa = squarefree_split(a)
    b0, sb = squarefree_split(b)
    X, Y, depth = _descent(a0, b0)
    x, y = _canonical_point(X / sa, Y / sb)
    cert = ConicCertificate(a, b, "solution", x=x, y=y, descent_depth=depth)
    assert cert.verify(), (a, b, x, y)
    return cert


# ---------------------------------------------------------------------------
# the ternary form

def legendre_ternary(a: int, b: int, c: int) -> Optional[tuple[int, int, int]]:
    """A nonzero integer zero of a x^2 + b y^2 + c z^2 (a b c squarefree),
    or None when one of the classical conditions fails: mixed signs and
    -bc, -ca, -ab squares modulo |a|, |b|, |c| respectively."""
    if a * b * c == 0:
        raise ValueError("coefficients must be nonzero")
    if not factorize(a * b * c).is_squarefree():
        raise ValueError("a b c must be squarefree")
    if a > 0 and b > 0 and c > 0 or a < 0 and b < 0 and c < 0:
        return None  # definite over R
    for s, m in ((-b * c, a), (-c * a, b), (-a * b, c)):
        if abs(m) > 1 and sqrt_mod_squarefree(s, m) is None:
            return None
    cert = solve_conic(Fraction(-a, c), Fraction(-b, c))
    assert cert.outcome == "solution", (a, b, c)
    den = math.lcm(cert.x.denominator, cert.y.denominator)
    x, y, z = abs(cert.x.numerator * (den // cert.x.denominator)), abs(
        cert.y.numerator * (den // cert.y.denominator)
    ), den
    g = math.gcd(math.gcd(x, y), z)
    return x // g, y // g, z // g


# ---------------------------------------------------------------------------
# the global norm test

@dataclass(frozen=True)
class NormCertificate:
    """a = z^2 - b y^2 when is_norm; otherwise the failing places."""

    a: Fraction
    b: Fraction
    is_norm: bool
    y: Optional[Fraction] = None
    z: Optional[Fraction] = None
    places: tuple = ()

    def verify(self) -> bool:
        if self.is_norm:
            return self.z ** 2 - self.b * self.y ** 2 == self.a
        return len(self.places) > 0


def global_is_norm(a: Rat, b: Rat) -> NormCertificate:
    """Whether a is a norm from Q(sqrt(b)), i.e. a = z^2 - b y^2 has a
    rational solution; local-global reduces this to the symbol vector."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    rb = is_rational_square(b)
    if rb is not None:
        # norm map of the split algebra is onto: factor a = (z-ty)(z+ty)
        z = (a + 1) / 2
        y = (a - 1) / (2 * rb)
        cert = NormCertificate(a, b, True, y=y, z=z)
        assert cert.verify()
        return cert
    conic = solve_conic(1 / a, -b / a)
    if conic.outcome == "obstruction":
        return NormCertificate(a, b, False, places=conic.places)
    cert = NormCertificate(a, b, True, y=conic.y, z=conic.x)
    assert cert.verify()
    return cert
