"""Quadratic characters of (Z/mZ)^x and of p-local units: the Legendre
character, the mod-4 and mod-8 sign characters, Gauss's lemma, the
reciprocity law with its lattice-count proof, and the composite characters
psi_a and chi_a.

Sign values are plain ints in {+1,-1}; every sign operation has an epsilon
twin returning an element of {0,1} (the exponent in sign = (-1)^eps), and all
exponent bookkeeping is done mod 2 in those twins to keep signs and exponents
from being mixed up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from qrlab import kernels
from qrlab.rational import Rat, factorize, is_probable_prime, vp_split


def _unit_residue(x: Rat, m: int) -> int:
    """x mod m for a rational x whose numerator and denominator are prime to m."""
    x = Fraction(x)
    if math.gcd(x.denominator, m) != 1 or math.gcd(x.numerator, m) != 1:
        raise ValueError(f"{x} is not a unit modulo {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


# ---------------------------------------------------------------------------
# the three primitive characters and the archimedean sign

def eps4(a: Rat) -> int:
    """(a-1)/2 mod 2 for a 2-adic unit a: 0 iff a = 1 (mod 4)."""
    return (_unit_residue(a, 4) - 1) // 2


def lambda4(a: Rat) -> int:
    return (-1) ** eps4(a)


def eps8(a: Rat) -> int:
    """(a^2-1)/8 mod 2 for a 2-adic unit a: 0 iff a = +-1 (mod 8)."""
    r = _unit_residue(a, 8)
    return (r * r - 1) // 8 % 2


def lambda8(a: Rat) -> int:
    return (-1) ** eps8(a)


def eps_inf(a: Rat) -> int:
    """0 for positive a, 1 for negative a."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("sign of 0 is undefined")
    return 0 if a > 0 else 1


def sign_inf(a: Rat) -> int:
    return (-1) ** eps_inf(a)


def legendre(a: Rat, p: int) -> int:
    """The quadratic character of the unit a modulo the odd prime p, by
    Euler's criterion a^((p-1)/2); inputs with v_p(a) != 0 are rejected."""
    if p == 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    try:
        r, u = vp_split(a, p)
    except TypeError:
        raise ValueError("a must be nonzero")
    if r != 0:
        raise ValueError(f"v_{p}({a}) = {r} != 0: not a unit at {p}")
    t = pow(_unit_residue(u, p), (p - 1) // 2, p)
    return 1 if t == 1 else -1


def eps_p(a: Rat, p: int) -> int:
    return 0 if legendre(a, p) == 1 else 1


# ---------------------------------------------------------------------------
# Gauss's lemma and the lattice-count proof of reciprocity

def gauss_lemma_sign(a: int, p: int) -> int:
    """lambda_p(a) as the product of the signs e_a(x) over the section
    S = [1, (p-1)/2], where e_a(x) is the sign of the representative of ax
    in [-(p-1)/2, (p-1)/2].  Kept as an independent O(p) oracle for legendre."""
    if p == 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if math.gcd(a, p) != 1:
        raise ValueError("gcd(a, p) must be 1")
    return (-1) ** kernels.gauss_flip_count(a, p)


def lattice_counts(p: int, q: int) -> tuple[int, int]:
    """(M, N) over the grid [1,p']x[1,q']: M counts qx-py in [-p',-1] and
    N counts qx-py in [1,q'], so that (-1)^M = lambda_p(q), (-1)^N =
    lambda_q(p), and M+N = p'q' (mod 2)."""
    if p == q:
        raise ValueError("p and q must be distinct")
    for r in (p, q):
        if r == 2 or not is_probable_prime(r):
            raise ValueError(f"{r} is not an odd prime")
    return kernels.lattice_band_counts(p, q)


def reciprocity_check(p: int, q: int) -> bool:
    """lambda_p(q) = lambda_q(lambda_4(p) p), plus both supplementary laws
    lambda_p(-1) = lambda_4(p) and lambda_p(2) = lambda_8(p)."""
    law = legendre(q, p) == legendre(lambda4(p) * p, q)
    supp1 = legendre(-1, p) == lambda4(p)
    supp2 = legendre(2, p) == lambda8(p)
    return law and supp1 and supp2


# ---------------------------------------------------------------------------
# structural quadratic characters

_CONDUCTORS = {4: 4, 8: 8}


@dataclass(frozen=True)
class QuadraticCharacter:
    """A product of primitive quadratic characters, stored structurally.

    `factors` is a set drawn from {4, 8} and odd primes: 4 stands for the
    mod-4 sign character, 8 for the mod-8 one, an odd prime p for the
    Legendre character at p.  `unramified_sign_prime`, when set to p, tacks
    on the local factor (-1)^{v_p(x)} (only meaningful for evaluation in
    Q_p^x; it does not contribute to the modulus).
    """

    factors: frozenset[int]
    unramified_sign_prime: Optional[int] = None

    def __post_init__(self):
        for f in self.factors:
            if f not in (4, 8) and (f == 2 or not is_probable_prime(f)):
                raise ValueError(f"bad character factor {f}")

    @property
    def modulus(self) -> int:
        m = 1
        for f in self.factors:
            m = math.lcm(m, _CONDUCTORS.get(f, f))
        return m

    @property
    def is_trivial(self) -> bool:
        return not self.factors and self.unramified_sign_prime is None

    def times(self, other: "QuadraticCharacter") -> "QuadraticCharacter":
        if self.unramified_sign_prime != other.unramified_sign_prime and None not in (
            self.unramified_sign_prime,
            other.unramified_sign_prime,
        ):
            raise ValueError("cannot multiply characters at different places")
        nu = None
        if (self.unramified_sign_prime is None) != (other.unramified_sign_prime is None):
            nu = self.unramified_sign_prime or other.unramified_sign_prime
        return QuadraticCharacter(self.factors ^ other.factors, nu)

    def eval(self, x: Rat) -> int:
        """Global evaluation at x prime to the modulus (x odd when 4 or 8
        divides the modulus).  The nu factor, if any, uses v_p(x)."""
        e = 0
        for f in self.factors:
            if f == 4:
                e += eps4(x)
            elif f == 8:
                e += eps8(x)
            else:
                e += eps_p(x, f)
        if self.unramified_sign_prime is not None:
            r, _ = vp_split(x, self.unramified_sign_prime)
            e += r
        return (-1) ** (e % 2)

    def eval_local(self, x: Rat, p: int) -> int:
        """Evaluation as a character of Q_p^x: x = p^m u, the quadratic
        factors act on the unit u, the uniformiser is sent to +1 (nu factor
        excepted, which contributes (-1)^m)."""
        split = vp_split(x, p)
        try:
            m, u = split
        except TypeError:
            raise ValueError("x must be nonzero")
        e = 0
        for f in self.factors:
            if f == 4:
                e += eps4(u)
            elif f == 8:
                e += eps8(u)
            else:
                if f != p:
                    raise ValueError(f"factor {f} is not local at {p}")
                e += eps_p(u, f)
        if self.unramified_sign_prime is not None:
            if self.unramified_sign_prime != p:
                raise ValueError("nu factor is not local at requested prime")
            e += m
        return (-1) ** (e % 2)

    def label(self) -> str:
        parts = []
        if self.unramified_sign_prime is not None:
            parts.append(f"nu_{self.unramified_sign_prime}")
        for f in sorted(self.factors):
            parts.append(f"lambda_{f}")
        return "*".join(parts) if parts else "1"


TRIVIAL_CHARACTER = QuadraticCharacter(frozenset())


def psi_support(a: int) -> int:
    """k(a): the product of the primes appearing to an odd power in odd a."""
    if a % 2 == 0:
        raise ValueError("a must be odd")
    return abs(factorize(a).squarefree_part())


def psi(a: int, n: Rat) -> int:
    """psi_a(n) = prod of lambda_p(n) over primes p with v_p(a) odd."""
    if a % 2 == 0:
        raise ValueError("a must be odd")
    sign = 1
    for p, e in factorize(a).factors:
        if e % 2:
            sign *= legendre(n, p)
    return sign


def chi_character(a: int) -> QuadraticCharacter:
    """The character chi_a of G_{4|a|} attached to a squarefree a, built by
    the recipe: for positive odd b = l_1...l_r, chi_b = lambda_4^{eps_4(b)}
    lambda_{l_1}...lambda_{l_r}; then chi_{-b} = lambda_4 chi_b and
    chi_{2b} = lambda_8 chi_b."""
    fac = factorize(a)
    if not fac.is_squarefree():
        raise ValueError(f"{a} is not squarefree")
    odd_primes = frozenset(p for p, _ in fac.factors if p != 2)
    b = 1
    for p in odd_primes:
        b *= p
    factors = set(odd_primes)
    if eps4(b):
        factors ^= {4}
    if fac.sign < 0:
        factors ^= {4}
    if fac.vp(2):
        factors ^= {8}
    return QuadraticCharacter(frozenset(factors))


def kronecker_chi(a: int, x: int) -> int:
    """chi_a(x) for squarefree a and x prime to 4|a|."""
    if math.gcd(x, 4 * abs(a)) != 1:
        raise ValueError(f"gcd({x}, 4|a|) must be 1")
    return chi_character(a).eval(x)


def quadratic_char_basis(m: int) -> list[QuadraticCharacter]:
    """An independent generating set for the order-<=2 characters of G_m:
    lambda_p for each odd prime p | m, lambda_4 if 4 | m, lambda_8 if 8 | m."""
    if m <= 2:
        raise ValueError("m must be > 2")
    fac = factorize(m)
    basis = [
        QuadraticCharacter(frozenset({p})) for p, _ in fac.factors if p != 2
    ]
    if fac.vp(2) > 1:
        basis.append(QuadraticCharacter(frozenset({4})))
    if fac.vp(2) > 2:
        basis.append(QuadraticCharacter(frozenset({8})))
    return basis


def group_product_sign(m: int) -> int:
    """The product of all units mod m, as +-1: it is -1 exactly when G_m is
    cyclic of even order, i.e. for m = 4, m = l^a and m = 2 l^a (l odd)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m in (1, 2):
        return 1
    if m == 4:
        return -1
    fac = factorize(m)
    odd = [(p, e) for p, e in fac.factors if p != 2]
    v2 = fac.vp(2)
    if len(odd) == 1 and v2 <= 1:
        return -1
    return 1


def binomial_primality(n: int) -> bool:
    """Whether (T+1)^n = T^n + 1 in (Z/nZ)[T], i.e. all middle binomial
    coefficients vanish mod n; by the factorial-valuation identity this
    happens exactly when n is prime."""
    if n <= 1:
        raise ValueError("n must be > 1")
    c = 1
    for k in range(1, n // 2 + 1):
        c = c * (n - k + 1) // k
        if c % n:
            return False
    return True


def smallest_nonresidue(p: int) -> int:
    """The least positive non-residue modulo the odd prime p."""
    u = 2
    while legendre(u, p) == 1:
        u += 1
    return u


# ---------------------------------------------------------------------------
# the Mersenne showcase: lambda_p(2012) for p = 2^43112609 - 1

@dataclass(frozen=True)
class MersenneCharacterResult:
    exponent: int
    exponent_residue: int  # 43112609 mod 502
    two_power_residue: int  # 2^347 mod 503
    p_residue: int  # p mod 503
    euler_argument: int  # the residue fed to Euler's criterion mod 503
    sign_euler: int
    sign_factored: int  # cross-check via 91 = 7 * 13

    @property
    def sign(self) -> int:
        return self.sign_euler


def bost_demo() -> MersenneCharacterResult:
    """Compute lambda_p(2012) for the Mersenne prime p = 2^43112609 - 1
    without materializing p: 2012 = 2^2 * 503, so lambda_p(2012) =
    lambda_p(503), which reciprocity turns into a computation mod 503."""
    exponent = 43112609
    q = 503  # prime, q = 3 (mod 4)
    # ord(2 mod 503) divides 502; reduce the Mersenne exponent mod 502.
    e = exponent % (q - 1)
    two_pow = pow(2, e, q)
    p_mod = two_pow - 1
    # p = 3 (mod 4), so lambda_p(q) = lambda_q(-p) = lambda_q(-(p mod q)).
    arg = (-p_mod) % q
    sign_euler = legendre(arg, q)
    # -91 = -1 * 7 * 13 gives an independent multiplicative route.
    sign_factored = legendre(-1, q)
    for f, exp in factorize(p_mod).factors:
        sign_factored *= legendre(f, q) ** exp
    return MersenneCharacterResult(
        exponent=exponent,
        exponent_residue=e,
        two_power_residue=two_pow,
        p_residue=p_mod,
        euler_argument=arg,
        sign_euler=sign_euler,
        sign_factored=sign_factored,
    )
