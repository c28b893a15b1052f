"""Elementary number theory shared by the rest of the package.

Everything here is a pure function of integers, so it is safe to call from
any thread or worker process.
"""

from functools import lru_cache
from math import comb, isqrt


def _check_positive(n):
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def factorize(n):
    """Return the prime factorization of n as an ascending list of (prime, exponent)."""
    _check_positive(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def moebius(n):
    """Return the Moebius function mu(n)."""
    _check_positive(n)
    sign = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        sign = -sign
    return sign


def divisors(n):
    _check_positive(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def r_k(n, k):
    """Number of n-cycles of the generic map x^k + c.

    Computed as (1/n) * sum_{d | n} k^d mu(n/d); n * r_k(n) is the degree of
    the n-th dynatomic polynomial of x^k + c.
    """
    _check_positive(n)
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    total = sum(k**d * moebius(n // d) for d in divisors(n))
    q, rem = divmod(total, n)
    if rem:
        raise ArithmeticError(f"sum for r_{k}({n}) = {total} is not divisible by {n}")
    return q


@lru_cache(maxsize=None)
def _derangement_table(i):
    # grows the table iteratively so large i never recurses deeply
    table = [1, 0]
    for j in range(2, i + 1):
        table.append((j - 1) * (table[j - 1] + table[j - 2]))
    return tuple(table)


def derangements(i):
    """Number of fixed-point-free permutations of i letters (D_{0,0} = 1)."""
    if i < 0:
        raise ValueError(f"expected a nonnegative integer, got {i}")
    if i < 2:
        return 1 - i
    return _derangement_table(i)[i]


def rencontres(r, i):
    """Number of permutations of r letters with exactly i fixed points."""
    if r < 0 or i < 0:
        raise ValueError("r and i must be nonnegative")
    if i > r:
        raise ValueError(f"i = {i} exceeds r = {r}")
    return comb(r, i) * derangements(r - i)


_SEGMENT = 1 << 16


def primes_up_to(limit, segment=_SEGMENT):
    """Yield every prime <= limit in ascending order.

    Segmented sieve of Eratosthenes: memory is O(sqrt(limit) + segment).
    """
    if limit < 2:
        return
    root = isqrt(limit)
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for q in range(2, isqrt(root) + 1):
        if base[q]:
            base[q * q :: q] = bytearray(len(range(q * q, root + 1, q)))
    small = [q for q in range(2, root + 1) if base[q]]
    yield from small

    low = root + 1
    while low <= limit:
        high = min(low + segment - 1, limit)
        size = high - low + 1
        block = bytearray([1]) * size
        for q in small:
            start = max(q * q, -(-low // q) * q)
            if start > high:
                continue
            block[start - low :: q] = bytearray(len(range(start - low, size, q)))
        for off in range(size):
            if block[off]:
                yield low + off
        low = high + 1


def prime_count(limit):
    return sum(1 for _ in primes_up_to(limit))


def multiplicative_order(a, p, factors=None):
    """Order of a in the multiplicative group of F_p (p prime, a != 0 mod p).

    ``factors`` may carry a precomputed factorization of p - 1.
    """
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    if factors is None:
        factors = factorize(p - 1) if p > 2 else []
    order = p - 1
    for q, _ in factors:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def p_power_split(n, p):
    """Return (e, rest) with n = p^e * rest and p not dividing rest."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n
