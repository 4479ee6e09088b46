"""The quadratic Hilbert symbol (a,b)_v at every place of Q, the product
formula, constructive local solvability witnesses for a x^2 + b y^2 = 1,
norm-group membership, and the quadratic-extension/character dictionary.

Symbols are computed exactly from closed forms on valuations and unit
residues; witnesses are the only finite-precision artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from qrlab.padic import PAdicElement, padic_sqrt, square_class
from qrlab.rational import (
    INF_PLACE,
    Place,
    Rat,
    is_rational_square,
    rational_factor_exponents,
    vp,
    vp_split,
)
from qrlab.symbols import (
    QuadraticCharacter,
    eps4,
    eps8,
    eps_inf,
    eps_p,
    smallest_nonresidue,
)

PlaceLike = Union[Place, int, str]


def _coerce_place(v: PlaceLike) -> Place:
    if isinstance(v, Place):
        return v
    if isinstance(v, int):
        return Place.finite(v)
    return Place.parse(v)


def _split_at(x, p: int):
    """(valuation, unit-as-rational-or-residue) for Rational or PAdicElement."""
    if isinstance(x, PAdicElement):
        if x.is_zero:
            raise ValueError("inputs must be nonzero")
        if x.prime != p:
            raise ValueError(f"element lives at {x.prime}, not {p}")
        if p == 2 and x.precision < 3:
            raise ValueError("need 3 unit digits at 2")
        return x.valuation, Fraction(x.unit)
    x = Fraction(x)
    if x == 0:
        raise ValueError("inputs must be nonzero")
    return vp_split(x, p)


def hilbert_symbol(a, b, v: PlaceLike) -> int:
    """(a,b)_v: +1 iff a x^2 + b y^2 = z^2 has a nontrivial solution in Q_v,
    from the closed forms on valuations and unit residues."""
    place = _coerce_place(v)
    if place.is_infinite:
        a, b = Fraction(a), Fraction(b)
        if a == 0 or b == 0:
            raise ValueError("inputs must be nonzero")
        return (-1) ** (eps_inf(a) * eps_inf(b))
    p = place.prime
    alpha, ua = _split_at(a, p)
    beta, ub = _split_at(b, p)
    if p == 2:
        e = eps4(ua) * eps4(ub) + beta * eps8(ua) + alpha * eps8(ub)
    else:
        e = alpha * beta * eps_p(-1, p) + beta * eps_p(ua, p) + alpha * eps_p(ub, p)
    return (-1) ** (e % 2)


# ---------------------------------------------------------------------------
# the full symbol vector and the product formula

@dataclass(frozen=True)
class SymbolVector:
    """The family ((a,b)_v)_v, stored by its finite -1 support."""

    minus_places: frozenset

    def __post_init__(self):
        if len(self.minus_places) % 2:
            raise ValueError("the -1 support of a symbol vector must be even")

    def sign_at(self, v: PlaceLike) -> int:
        return -1 if _coerce_place(v) in self.minus_places else 1

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.minus_places))

    def product(self) -> int:
        return (-1) ** len(self.minus_places)

    def to_json(self) -> dict:
        return {
            "support": [
                {"place": v.json_value(), "sign": -1} for v in self.support
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymbolVector":
        minus = set()
        for entry in data.get("support", ()):
            if entry["sign"] == -1:
                minus.add(Place.parse(str(entry["place"])))
            elif entry["sign"] != 1:
                raise ValueError(f"bad sign {entry['sign']}")
        return cls(frozenset(minus))


def hilbert_vector(a: Rat, b: Rat) -> SymbolVector:
    """All local symbols of (a, b); support is within {inf, 2} and the primes
    of a and b, and the -1 count is even (the product formula)."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("inputs must be nonzero")
    candidates = {INF_PLACE, Place.finite(2)}
    for x in (a, b):
        _, exps = rational_factor_exponents(x)
        candidates.update(Place.finite(p) for p, _ in exps)
    minus = frozenset(v for v in candidates if hilbert_symbol(a, b, v) == -1)
    return SymbolVector(minus)


# ---------------------------------------------------------------------------
# local witnesses

@dataclass(frozen=True)
class LocalWitness:
    """x, y with a x^2 + b y^2 = 1 in Q_v, exact to `precision` p-adic digits
    at a finite place; at infinity exact unless flagged approximate."""

    place: Place
    x: Fraction
    y: Fraction
    precision: int
    approximate: bool = False

    def verify(self, a: Rat, b: Rat, tolerance: float = 1e-9) -> bool:
        err = Fraction(a) * self.x ** 2 + Fraction(b) * self.y ** 2 - 1
        if self.place.is_infinite:
            if self.approximate:
                return abs(err) <= tolerance
            return err == 0
        if err == 0:
            return True
        return vp(err, self.place.prime) >= self.precision


_SEARCH_DENOMS = 16
_SEARCH_RANGE = 12


def _infinite_witness(a: Fraction, b: Fraction) -> LocalWitness:
    """Exact witness when a square coordinate works or a small rational point
    exists; otherwise a float witness flagged approximate."""
    ra = is_rational_square(a) if a > 0 else None
    if ra:
        return LocalWitness(INF_PLACE, Fraction(1) / ra, Fraction(0), 0)
    rb = is_rational_square(b) if b > 0 else None
    if rb:
        return LocalWitness(INF_PLACE, Fraction(0), Fraction(1) / rb, 0)
    # bounded search for an exact rational point
    for den in range(1, _SEARCH_DENOMS + 1):
        for num in range(0, _SEARCH_RANGE * den + 1):
            y = Fraction(num, den)
            rest = (1 - b * y * y) / a
            if rest < 0:
                continue
            r = is_rational_square(rest)
            if r is not None:
                return LocalWitness(INF_PLACE, r, y, 0)
    # approximate fallback: solve along whichever axis is positive
    if a > 0:
        xf = math.sqrt(1.0 / float(a))
        return LocalWitness(INF_PLACE, Fraction(xf), Fraction(0), 0, approximate=True)
    yf = math.sqrt(1.0 / float(b))
    return LocalWitness(INF_PLACE, Fraction(0), Fraction(yf), 0, approximate=True)


def _unit_residue_mod(x: Fraction, p: int, k: int) -> int:
    mod = p ** k
    return x.numerator * pow(x.denominator, -1, mod) % mod


def _sqrt_rep(x: Fraction, p: int, precision: int) -> Fraction:
    """Rational representative of the p-adic square root of x (x a square
    class-1 value at p), accurate to `precision` digits."""
    root = padic_sqrt(PAdicElement.from_rational(x, p, precision))
    assert root is not None
    return root.rational_rep()


def _witness_both_units(a: Fraction, b: Fraction, p: int, K: int):
    """Case v_p(a) = v_p(b) = 0 (symbol known to be +1)."""
    if square_class(a, p) == 1:
        return Fraction(1) / _sqrt_rep(a, p, K), Fraction(0)
    if square_class(b, p) == 1:
        return Fraction(0), Fraction(1) / _sqrt_rep(b, p, K)
    if p != 2:
        # both non-residues: {a x^2} and {1 - b y^2} each cover (p+1)/2
        # residues, so they intersect at a nonzero common value
        for y0 in range(1, p):
            t = (1 - b * y0 * y0) / a
            if vp(t, p) == 0 and square_class(t, p) == 1:
                return _sqrt_rep(t, p, K), Fraction(y0)
        raise AssertionError("counting argument found no intersection")
    # p = 2, neither unit is 1 mod 8; symbol +1 forces a or b = 5 (mod 8)
    if _unit_residue_mod(a, 2, 3) == 5:
        return _sqrt_rep((1 - 4 * b) / a, 2, K), Fraction(2)
    assert _unit_residue_mod(b, 2, 3) == 5
    return Fraction(2), _sqrt_rep((1 - 4 * a) / b, 2, K)


def _witness_unit_by_uniformizer(a: Fraction, b: Fraction, p: int, K: int):
    """Case v_p(a) = 0, v_p(b) = 1 (symbol +1)."""
    if square_class(a, p) == 1:
        return Fraction(1) / _sqrt_rep(a, p, K), Fraction(0)
    # for odd p the symbol is lambda_p(a), so a must be class 1 above
    assert p == 2, "odd p with symbol +1 implies a is a square"
    # remaining 2-adic case: a = 1 - b (mod 8), witness y = 1
    assert _unit_residue_mod(a, 2, 3) == _unit_residue_mod(1 - b, 2, 3)
    return _sqrt_rep((1 - b) / a, 2, K), Fraction(1)


def _witness_both_uniformizers(a: Fraction, b: Fraction, p: int, K: int):
    """Case v_p(a) = v_p(b) = 1: reduce by a'' = -a b / p^2, a unit."""
    a2 = -a * b / p ** 2
    if square_class(a2, p) == 1:
        # a x^2 + b y^2 = ((b y)^2 - a''(p x)^2)/b: split b = t * (b/t), t=1
        s = _sqrt_rep(a2, p, K)
        x = (b - 1) / (2 * s * p)
        y = (1 + b) / (2 * b)
        return x, y
    # only reachable at p = 2: pull a witness for (a'', b), case (0, 1)
    w, z = _witness_unit_by_uniformizer(a2, b, p, K)
    assert z != 0
    # b = (1/z)^2 - a''(w/z)^2 turns into a x^2 + b y^2 = 1
    return w / (p * z), 1 / (b * z)


_PRECISION_BUFFER = 8


def local_solve_witness(
    a: Rat, b: Rat, v: PlaceLike, precision: int = 32
) -> Optional[LocalWitness]:
    """A constructive solution of a x^2 + b y^2 = 1 in Q_v, or None exactly
    when the Hilbert symbol is -1.

    The construction reduces a and b by squares of p so both have valuation
    0 or 1, then walks the square-class case table; square roots are Hensel
    lifts carried to `precision` + buffer digits.
    """
    place = _coerce_place(v)
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("inputs must be nonzero")
    if hilbert_symbol(a, b, place) == -1:
        return None
    if place.is_infinite:
        return _infinite_witness(a, b)
    p = place.prime
    K = precision + _PRECISION_BUFFER
    va, _ = vp_split(a, p)
    vb, _ = vp_split(b, p)
    alpha, beta = va % 2, vb % 2
    ea, eb = (va - alpha) // 2, (vb - beta) // 2
    ar = a / Fraction(p) ** (2 * ea)
    br = b / Fraction(p) ** (2 * eb)
    if (alpha, beta) == (0, 0):
        x, y = _witness_both_units(ar, br, p, K)
    elif (alpha, beta) == (0, 1):
        x, y = _witness_unit_by_uniformizer(ar, br, p, K)
    elif (alpha, beta) == (1, 0):
        y, x = _witness_unit_by_uniformizer(br, ar, p, K)
    else:
        x, y = _witness_both_uniformizers(ar, br, p, K)
    witness = LocalWitness(place, x / Fraction(p) ** ea, y / Fraction(p) ** eb, precision)
    assert witness.verify(a, b), (a, b, p, witness)
    return witness


def is_local_norm(a: Rat, b: Rat, v: PlaceLike) -> bool:
    """Whether a is a norm from Q_v(sqrt(b)): when b is a square the norm map
    is the identity, and otherwise membership is detected by the symbol."""
    return hilbert_symbol(a, b, v) == 1


# ---------------------------------------------------------------------------
# quadratic extensions <-> characters

def _nu(p: int) -> QuadraticCharacter:
    return QuadraticCharacter(frozenset(), unramified_sign_prime=p)


def ext_char_correspondence(p: int) -> list[tuple[int, QuadraticCharacter]]:
    """The dictionary between quadratic extensions Q_p(sqrt(b)) (b running
    over the nontrivial square classes) and the quadratic characters of
    Q_p^x with kernel the norm group: chi_b(a) = (a, b)_p."""
    if p == 2:
        nu = _nu(2)
        l4 = QuadraticCharacter(frozenset({4}))
        l8 = QuadraticCharacter(frozenset({8}))
        return [
            (5, nu),
            (-1, l4),
            (-5, nu.times(l4)),
            (2, l8),
            (10, nu.times(l8)),
            (-2, l4.times(l8)),
            (-10, nu.times(l4).times(l8)),
        ]
    u = smallest_nonresidue(p)
    nu = _nu(p)
    lp = QuadraticCharacter(frozenset({p}))
    return [(u, nu), (-p, lp), (-u * p, nu.times(lp))]
