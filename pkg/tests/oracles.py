"""Independent brute-force reference implementations used to pin down
expected values.  Everything here is deliberately naive: no modular
exponentiation tricks, no library calls into qrlab internals beyond plain
integer arithmetic, so that agreement with the package is meaningful."""

import math
from fractions import Fraction


def primes_below(n: int) -> list[int]:
    sieve = bytearray([1]) * n
    if n > 0:
        sieve[0:1] = b"\x00"
    if n > 1:
        sieve[1:2] = b"\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(sieve[p * p:: p]))
    return [i for i in range(n) if sieve[i]]


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def legendre_by_squares(a: int, p: int) -> int:
    """Membership of a mod p in the explicit set of nonzero squares."""
    squares = {x * x % p for x in range(1, p)}
    return 1 if a % p in squares else -1


def flips_by_hand(a: int, p: int) -> int:
    """Count of x in [1,(p-1)/2] whose representative of ax lands negative."""
    return sum(1 for x in range(1, (p - 1) // 2 + 1) if a * x % p > (p - 1) // 2)


def sqrt_mod_by_search(a: int, m: int):
    """Smallest root of x^2 = a (mod m) in [0, m/2], by full scan."""
    roots = [x for x in range(m) if (x * x - a) % m == 0]
    folded = sorted(min(x, m - x) for x in roots)
    return folded[0] if folded else None


def unit_group_product(m: int) -> int:
    """Product of all units mod m, mapped to +-1 (fails loudly otherwise)."""
    from math import gcd

    pr = 1
    for x in range(1, m + 1):
        if gcd(x, m) == 1:
            pr = pr * x % m
    if pr == 1 % m:
        return 1
    assert pr == m - 1, (m, pr)
    return -1


def power_sum_direct(k: int, n: int) -> int:
    """0^k + 1^k + ... + (n-1)^k, with 0^0 counted as 1."""
    return sum(m ** k for m in range(n))


def hensel_one_digit(f, df, x0: int, p: int, target: int) -> int:
    """Refine a simple root of f one p-adic digit at a time: the textbook
    induction, kept as an oracle for the Newton-style lift.

    f, df: callables on ints; x0: approximate root with v_p(f(x0)) > 2*delta
    where delta = v_p(df(x0)).  Returns the root mod p^target.
    """

    def vp(n):
        if n == 0:
            return 10 ** 9
        r = 0
        while n % p == 0:
            n //= p
            r += 1
        return r

    delta = vp(df(x0))
    m = vp(f(x0))
    assert m > 2 * delta, "hypothesis v_p(f(x0)) > 2 v_p(df(x0)) violated"
    x = x0 % p ** target
    while m < target + delta:
        # one digit: x <- x + t*p^(m-delta) with t killing the next term
        fd = df(x) // p ** delta
        t = (-(f(x) // p ** m) * pow(fd, -1, p)) % p
        x = (x + t * p ** (m - delta)) % p ** target
        m = min(vp(f(x)), target + delta)
    return x % p ** (target)


def slow_hilbert(a: Fraction, b: Fraction, p) -> int:
    """Solvability of a x^2 + b y^2 = z^2 in Q_p by exhaustive search on
    primitive triples mod p^k; p = 0 means the real place.  Only meant for
    small p and small heights.

    After stripping square factors the coefficients have valuation <= 1, and
    a primitive solution mod p^3 (p odd) resp. mod 2^6 lifts to Z_p by
    one-variable Hensel applied to whichever variable is a unit, so the
    search modulus below is exact, not heuristic.
    """
    a, b = Fraction(a), Fraction(b)
    if p == 0:
        return 1 if (a > 0 or b > 0) else -1
    # clear denominators and strip square factors: the symbol only depends
    # on square classes, and small valuations keep the modulus small
    a_int = a.numerator * a.denominator
    b_int = b.numerator * b.denominator

    def strip(n):
        while n % (p * p) == 0:
            n //= p * p
        return n

    a_int, b_int = strip(a_int), strip(b_int)
    mod = p ** 3 if p > 2 else 64
    all_squares = {z * z % mod for z in range(mod)}
    unit_squares = {z * z % mod for z in range(mod) if z % p}
    for x in range(mod):
        for y in range(mod):
            t = (a_int * x * x + b_int * y * y) % mod
            if x % p or y % p:
                if t in all_squares:
                    return 1
            elif t in unit_squares:
                return 1
    return -1


def _vp_int(n: int, p: int) -> int:
    r = 0
    while n and n % p == 0:
        n //= p
        r += 1
    return r


def bernoulli_by_series(k: int) -> Fraction:
    """B_k read off the power series T/(e^T - 1) by direct inversion of
    sum_n T^n/(n+1)!, independent of the recurrence."""
    a = [Fraction(1, math.factorial(n + 1)) for n in range(k + 1)]
    c = [Fraction(1)]
    for n in range(1, k + 1):
        c.append(-sum(a[j] * c[n - j] for j in range(1, n + 1)))
    return c[k] * math.factorial(k)
