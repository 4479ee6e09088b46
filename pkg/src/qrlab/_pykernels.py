"""Pure-Python scan kernels (fallback twin of the compiled _ckernels).

These are the only loops in the library that iterate over every residue or
lattice cell rather than doing bignum arithmetic, so they are the only ones
worth compiling.  Both backends must stay behaviourally identical; the test
suite runs them against each other.
"""

BACKEND = "python"


def gauss_flip_count(a: int, p: int) -> int:
    """#{x in [1,(p-1)/2] : ax mod p falls in [(p+1)/2, p-1]}."""
    h = (p - 1) // 2
    a %= p
    n = 0
    for x in range(1, h + 1):
        if a * x % p > h:
            n += 1
    return n


def lattice_band_counts(p: int, q: int) -> tuple[int, int]:
    """Count (x,y) in [1,p']x[1,q'] with qx-py in [-p',-1] resp. [1,q']."""
    pp = (p - 1) // 2
    qq = (q - 1) // 2
    m = n = 0
    for x in range(1, pp + 1):
        qx = q * x
        for y in range(1, qq + 1):
            t = qx - p * y
            if -pp <= t <= -1:
                m += 1
            elif 1 <= t <= qq:
                n += 1
    return m, n


def trial_factor_range(n: int, lo: int, hi: int) -> tuple[list[tuple[int, int]], int]:
    """Divide out every prime factor of n in (lo, hi], candidates 2,3,6k+-1.

    Returns (sorted (prime, exponent) pairs found, remaining cofactor).
    Stops early once candidate^2 exceeds the cofactor (then the cofactor
    itself is prime or 1).
    """
    out = []
    for c in (2, 3):
        if lo < c <= hi and n % c == 0:
            e = 0
            while n % c == 0:
                n //= c
                e += 1
            out.append((c, e))
    c = 5 if lo < 5 else (lo // 6) * 6 - 1
    while c <= lo:
        c += 2 if c % 6 == 5 else 4
    while c <= hi and c * c <= n:
        if n % c == 0:
            e = 0
            while n % c == 0:
                n //= c
                e += 1
            out.append((c, e))
        c += 2 if c % 6 == 5 else 4
    return out, n
