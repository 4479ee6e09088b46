"""Bernoulli numbers and the von Staudt-Clausen integer, exact power sums,
the p-adic fractional part, and local root numbers of quadratic characters
(normalized Gauss sums) together with their global product formula.

Root numbers live in double-precision complex arithmetic; everything else
is exact.  The primitive fourth root of unity is fixed as i = (0, +1),
and W at the real place depends on that choice.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from qrlab.hilbert import PlaceLike, _coerce_place, ext_char_correspondence
from qrlab.padic import PAdicElement, PrecisionLossError, square_class
from qrlab.rational import INF_PLACE, Place, Rat, is_probable_prime, vp_split
from qrlab.symbols import TRIVIAL_CHARACTER, QuadraticCharacter, sign_inf

# ---------------------------------------------------------------------------
# Bernoulli numbers and friends

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """Exact B_k from sum_{j<=k} C(k+1, j) B_j = 0, so B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        acc = sum(math.comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[k]


def von_staudt_W(k: int) -> int:
    """The integer B_k + sum of 1/l over primes l with (l-1) | k, k even."""
    if k <= 0 or k % 2:
        raise ValueError("k must be a positive even integer")
    w = bernoulli(k) + sum(
        Fraction(1, d + 1) for d in range(1, k + 1) if k % d == 0 and is_probable_prime(d + 1)
    )
    if w.denominator != 1:
        raise ArithmeticError(f"W_{k} = {w} is not an integer")
    return w.numerator


def power_sum(k: int, n: int) -> int:
    """0^k + 1^k + ... + (n-1)^k, by the Bernoulli-polynomial identity
    S_k(n) = sum_m C(k, m) B_m n^(k+1-m)/(k+1-m), cross-checked against
    direct summation (the j = 0 term contributes 1 when k = 0)."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    total = sum(
        math.comb(k, m) * bernoulli(m) * Fraction(n) ** (k + 1 - m) / (k + 1 - m)
        for m in range(k + 1)
    )
    direct = sum(j ** k for j in range(n))
    if total != direct:
        raise ArithmeticError(f"power sum mismatch at ({k}, {n}): {total} vs {direct}")
    return direct


# ---------------------------------------------------------------------------
# the p-adic fractional part

def p_frac_part(x: Union[Rat, PAdicElement], p: Optional[int] = None) -> Fraction:
    """<x>_p: the negative-power tail of the p-adic expansion, a rational
    in [0, 1) with denominator a power of p and x - <x>_p integral at p."""
    if isinstance(x, PAdicElement):
        if p not in (None, x.prime):
            raise ValueError(f"element lives at {x.prime}, not {p}")
        p = x.prime
        if x.is_zero or x.valuation >= 0:
            return Fraction(0)
        if x.abs_precision < 0:
            raise PrecisionLossError("tail digits below precision")
        q = p ** (-x.valuation)
        return Fraction(x.unit % q, q)
    if p is None or not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v, u = vp_split(x, p)
    if v >= 0:
        return Fraction(0)
    q = p ** (-v)
    return Fraction(u.numerator * pow(u.denominator, -1, q) % q, q)


# ---------------------------------------------------------------------------
# complex values and local characters

@dataclass(frozen=True)
class ComplexValue:
    """A double-precision complex number; comparisons always carry an
    explicit tolerance."""

    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def times(self, other: "ComplexValue") -> "ComplexValue":
        return ComplexValue.of(self.as_complex() * other.as_complex())

    def modulus(self) -> float:
        return abs(self.as_complex())

    def distance(self, other: Union["ComplexValue", complex]) -> float:
        w = other.as_complex() if isinstance(other, ComplexValue) else other
        return abs(self.as_complex() - w)

    def __str__(self) -> str:
        return f"{self.re:.12g}{self.im:+.12g}·i"


ONE = ComplexValue(1.0, 0.0)
I_UNIT = ComplexValue(0.0, 1.0)


@dataclass(frozen=True)
class LocalCharacter:
    """A character of Q_v^x of order dividing 2: at a finite place an
    optional unramified sign nu times a ramified quadratic part (conductor
    dividing 8 or p); at the real place the sign character to the power r."""

    place: Place
    quad: QuadraticCharacter = TRIVIAL_CHARACTER
    nu: bool = False
    r: int = 0

    def __post_init__(self):
        if self.quad.unramified_sign_prime is not None:
            raise ValueError("pass the unramified sign as the nu flag")
        if self.place.is_infinite:
            if self.nu or self.quad.factors:
                raise ValueError("the real place has only the sign character")
            if self.r not in (0, 1):
                raise ValueError("r must be 0 or 1")
        else:
            if self.r:
                raise ValueError("r is archimedean-only")
            p = self.place.prime
            allowed = {4, 8} if p == 2 else {p}
            if not self.quad.factors <= allowed:
                raise ValueError(f"factors {set(self.quad.factors)} are not local at {p}")

    @classmethod
    def trivial(cls, v: PlaceLike) -> "LocalCharacter":
        return cls(_coerce_place(v))

    @classmethod
    def at_infinity(cls, r: int) -> "LocalCharacter":
        return cls(INF_PLACE, r=r)

    @classmethod
    def from_quadratic(cls, v: PlaceLike, chi: QuadraticCharacter) -> "LocalCharacter":
        place = _coerce_place(v)
        nu = chi.unramified_sign_prime
        if nu is not None and nu != place.prime:
            raise ValueError("nu factor is not local at the requested prime")
        return cls(place, QuadraticCharacter(chi.factors), nu is not None)

    @classmethod
    def attached_to_extension(cls, d: Rat, v: PlaceLike) -> "LocalCharacter":
        """The character of Q_v^x with kernel the norms of Q_v(sqrt(d))."""
        d = Fraction(d)
        if d == 0:
            raise ValueError("d must be nonzero")
        place = _coerce_place(v)
        if place.is_infinite:
            return cls(place, r=0 if d > 0 else 1)
        p = place.prime
        for b, chi in ext_char_correspondence(p):
            if square_class(b * d, p) == 1:
                return cls.from_quadratic(place, chi)
        return cls(place)  # d is a local square: the extension is split

    @property
    def is_unramified(self) -> bool:
        return not self.quad.factors

    def value(self, x: Rat) -> int:
        """chi(x) in {+1, -1}; x nonzero rational."""
        if self.place.is_infinite:
            return sign_inf(x) if self.r else 1
        chi = self.quad
        if self.nu:
            chi = chi.times(QuadraticCharacter(frozenset(), self.place.prime))
        return chi.eval_local(x, self.place.prime)

    def label(self) -> str:
        if self.place.is_infinite:
            return "sign" if self.r else "1"
        chi = self.quad
        if self.nu:
            chi = chi.times(QuadraticCharacter(frozenset(), self.place.prime))
        return chi.label()


def conductor_exponent(chi: LocalCharacter) -> int:
    """a(chi): the smallest n with chi trivial on U_n = 1 + p^n Z_p
    (n = 0 meaning trivial on all units, the unramified case)."""
    if chi.place.is_infinite:
        raise ValueError("conductor exponents live at finite places")
    p = chi.place.prime
    modulus = 8 if p == 2 else p
    for n in range(4):
        step = min(p ** n, modulus)
        group = [x for x in range(1, modulus + 1) if x % p and (x - 1) % step == 0]
        if all(chi.value(x) == 1 for x in group):
            return n
    raise AssertionError("quadratic characters have conductor exponent <= 3")


# ---------------------------------------------------------------------------
# root numbers

def _e(t: Fraction) -> complex:
    return cmath.exp(complex(0.0, 2.0 * math.pi * float(t)))


def local_root_number(
    chi: LocalCharacter, v: Optional[PlaceLike] = None, gamma: Optional[Rat] = None
) -> ComplexValue:
    """W_v(chi): i^(-r) at the real place; at p the normalized Gauss sum
    chi(gamma)/sqrt(p^a) * sum over units x mod p^a of chi(x) e(<x/gamma>_p)
    with v_p(gamma) = a(chi).  The value does not depend on gamma."""
    if v is not None and _coerce_place(v) != chi.place:
        raise ValueError("place does not match the character")
    if chi.place.is_infinite:
        return ONE if chi.r == 0 else ComplexValue(0.0, -1.0)
    p = chi.place.prime
    a = conductor_exponent(chi)
    if gamma is None:
        gamma = Fraction(p) ** a
    else:
        gamma = Fraction(gamma)
        if gamma == 0 or vp_split(gamma, p)[0] != a:
            raise ValueError(f"gamma must have valuation a(chi) = {a}")
    # ascending residue order keeps the floating sum deterministic
    total = sum(
        chi.value(x) * _e(p_frac_part(Fraction(x) / gamma, p))
        for x in range(1, p ** a + 1)
        if x % p
    )
    return ComplexValue.of(chi.value(gamma) * total / math.sqrt(p ** a))


def root_number_product(d: int) -> ComplexValue:
    """prod over v of W_v(chi_v) for the characters attached to Q_v(sqrt d),
    d squarefree; the factors away from {inf, 2, p | d} are 1, and the
    product itself must come back 1 up to rounding."""
    from qrlab.rational import factorize

    if d == 0:
        raise ValueError("d must be nonzero")
    if not factorize(d).is_squarefree():
        raise ValueError("d must be squarefree")
    places = [INF_PLACE, Place.finite(2)]
    places += [Place.finite(p) for p, _ in factorize(d).factors if p != 2]
    z = complex(1.0, 0.0)
    for v in places:
        z *= local_root_number(LocalCharacter.attached_to_extension(d, v)).as_complex()
    return ComplexValue.of(z)
