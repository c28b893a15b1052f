"""Dynatomic polynomials of x^k + m and the period/multiplier analysis of their roots mod p."""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import graphs
from .arith import divisors, factorize, moebius, multiplicative_order, p_power_split, primes_up_to
from .polynomials import (
    DEFAULT_DEGREE_CAP,
    DegreeCapExceeded,
    IntPoly,
    ModPoly,
    compose,
    derivative,
    divrem_exact,
    evaluate,
    gcd_mod,
    has_root_mod_p,
    iterate,
    reduce_mod_p,
    roots_mod_p,
)

# Phi over Z is only built when k^n stays below this (coefficient growth).
INTEGER_DEGREE_LIMIT = 1 << 16


class TheoremViolation(RuntimeError):
    """A root of a dynatomic polynomial fits none of the roots-and-multipliers cases."""


class NotSquarefree(ValueError):
    """f^n(x) - x has a repeated root, so the exceptional-prime set need not be finite."""


@dataclass(frozen=True)
class DynatomicSpec:
    k: int
    m: int
    n: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    def map(self):
        return IntPoly.monomial_plus(self.k, self.m)

    def map_mod(self, p):
        return reduce_mod_p(self.map(), p)


@dataclass(frozen=True)
class EqualPeriod:
    pass


@dataclass(frozen=True)
class RootOfUnity:
    j: int


@dataclass(frozen=True)
class CharPower:
    j: int
    e: int


@dataclass(frozen=True)
class RootClassification:
    alpha: int
    m: int
    multiplier: int
    case: object


def _dynatomic(f, n, degree_cap):
    if f.degree < 2 or not f.is_monic():
        raise ValueError("f must be monic of degree at least 2")
    if f.degree**n > degree_cap:
        raise DegreeCapExceeded(f"deg f^{n} = {f.degree}^{n} exceeds cap {degree_cap}")
    x = f._new([0, 1])
    divs = divisors(n)
    shifted = {}
    g = f
    for d in range(1, n + 1):
        if d > 1:
            g = compose(f, g)
        if d in divs:
            shifted[d] = g - x
    num = f._new([1])
    den = f._new([1])
    for d in divs:
        mu = moebius(n // d)
        if mu == 1:
            num = num * shifted[d]
        elif mu == -1:
            den = den * shifted[d]
    return divrem_exact(num, den)


def dynatomic_int(f, n, degree_cap=DEFAULT_DEGREE_CAP):
    """The n-th dynatomic polynomial of the monic integer polynomial f.

    Built as the product of f^d(x) - x over divisors d with mu(n/d) = 1,
    divided exactly by the product over those with mu(n/d) = -1.
    """
    return _dynatomic(f, n, degree_cap)


def dynatomic_mod(spec, p, degree_cap=DEFAULT_DEGREE_CAP):
    """[Phi_{f,n}]_p for f = x^k + m, computed directly in F_p[x]."""
    return _dynatomic(spec.map_mod(p), spec.n, degree_cap)


def period_of(f, alpha):
    """Least n with f^n(alpha) = alpha, or None if alpha is preperiodic only.

    Brent's cycle finding on the orbit of alpha; alpha is periodic exactly
    when the orbit has no tail.
    """
    p = f.p
    alpha %= p
    power = lam = 1
    tortoise = alpha
    hare = evaluate(f, alpha)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = evaluate(f, hare)
        lam += 1
    # alpha lies on the cycle iff advancing it by the cycle length returns to it
    y = alpha
    for _ in range(lam):
        y = evaluate(f, y)
    return lam if y == alpha else None


def multiplier(f, alpha):
    """Return (period, (f^period)'(alpha)) via the chain rule along the cycle."""
    m = period_of(f, alpha)
    if m is None:
        raise ValueError(f"{alpha} is not periodic under {f}")
    p = f.p
    df = derivative(f)
    lam = 1
    a = alpha % p
    for _ in range(m):
        lam = lam * evaluate(df, a) % p
        a = evaluate(f, a)
    return m, lam


_ORDER_FACTORS = {}


def _group_factors(p):
    fac = _ORDER_FACTORS.get(p)
    if fac is None:
        fac = factorize(p - 1) if p > 2 else []
        if len(_ORDER_FACTORS) > 4096:
            _ORDER_FACTORS.clear()
        _ORDER_FACTORS[p] = fac
    return fac


def classify_root(spec, p, alpha, phi=None):
    """Period, multiplier and roots-and-multipliers case of a root of [Phi_{f,n}]_p.

    ``phi`` may be passed to avoid recomputing the reduced dynatomic polynomial.
    """
    if phi is None:
        phi = dynatomic_mod(spec, p)
    if evaluate(phi, alpha) != 0:
        raise ValueError(f"{alpha} is not a root of Phi_{spec.n} mod {p}")
    f = spec.map_mod(p)
    m, lam = multiplier(f, alpha)
    n = spec.n
    if n == m:
        case = EqualPeriod()
    elif lam == 0 or n % m:
        case = None
    else:
        j = multiplicative_order(lam, p, _group_factors(p))
        if n == m * j:
            case = RootOfUnity(j)
        elif n % (m * j) == 0:
            e, rest = p_power_split(n // (m * j), p)
            case = CharPower(j, e) if rest == 1 and e >= 1 else None
        else:
            case = None
    if case is None:
        raise TheoremViolation(
            f"root {alpha} of Phi_{n} for x^{spec.k}+{spec.m} mod {p}: period {m}, multiplier {lam}"
        )
    return RootClassification(alpha % p, m, lam, case)


def _rational_gcd_degree(a, b):
    # Euclid over Q with exact fractions; only used for small degrees
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b:
        while a and a[-1] == 0:
            a.pop()
        lead = b[-1]
        while len(a) >= len(b):
            c = a[-1] / lead
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[shift + i] -= c * bi
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


_SQUAREFREE_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def _squarefree_mod(g):
    # a derivative that drops degree mod q says nothing about squarefreeness over Q
    dg = derivative(g)
    return dg.degree == g.degree - 1 and gcd_mod(g, dg).degree == 0


def squarefree_status(g, exact_degree_limit=64):
    """Decide whether the monic integer polynomial g is squarefree over Q.

    Returns "yes", "no", or "probably-not".  Squarefree reduction modulo any
    prime proves squarefreeness; otherwise an exact rational gcd settles small
    degrees and larger ones are reported as probable.
    """
    if any(_squarefree_mod(reduce_mod_p(g, q)) for q in _SQUAREFREE_PRIMES):
        return "yes"
    if g.degree <= exact_degree_limit:
        return "yes" if _rational_gcd_degree(g.coeffs, derivative(g).coeffs) == 0 else "no"
    return "probably-not"


def check_squarefree(spec, degree_cap=DEFAULT_DEGREE_CAP):
    """Raise NotSquarefree unless f^n(x) - x is squarefree over Q."""
    for q in _SQUAREFREE_PRIMES:
        g = iterate(spec.map_mod(q), spec.n, degree_cap) - ModPoly.x(q)
        if _squarefree_mod(g):
            return
    g = iterate(spec.map(), spec.n, degree_cap) - IntPoly.x()
    status = squarefree_status(g)
    if status != "yes":
        raise NotSquarefree(f"f^{spec.n}(x) - x for x^{spec.k}+{spec.m}: squarefree = {status}")


def phi_for_prime(spec, p, cache=None):
    """[Phi_{f,n}]_p, reduced from the integer polynomial when that is small enough."""
    if spec.k**spec.n <= INTEGER_DEGREE_LIMIT:
        if cache is None:
            phi = dynatomic_int(spec.map(), spec.n)
        else:
            phi = cache.get(spec)
            if phi is None:
                phi = cache[spec] = dynatomic_int(spec.map(), spec.n)
        return reduce_mod_p(phi, p)
    return dynatomic_mod(spec, p)


def period_point_exists(spec, p, phi=None, graph=None, rng=None, exhaustive_limit=1 << 10):
    """True iff x^k + m has a point of exact period n on F_p.

    Read off the functional graph when one is given; otherwise every point of
    period n is a root of Phi_n, so classify the roots.
    """
    if graph is not None:
        return graphs.has_period(graph, spec.n)
    if phi is None:
        phi = dynatomic_mod(spec, p)
    for alpha in roots_mod_p(phi, rng=rng, exhaustive_limit=exhaustive_limit):
        if classify_root(spec, p, alpha, phi).m == spec.n:
            return True
    return False


def exceptional_primes(spec, limit, graph_threshold=graphs.GRAPH_THRESHOLD, seed=0):
    """Primes p <= limit where [Phi_{f,n}]_p has a root but no point has period n, or vice versa."""
    check_squarefree(spec)
    f = spec.map()
    cache = {}
    out = []
    for p in primes_up_to(limit):
        phi = phi_for_prime(spec, p, cache)
        root = has_root_mod_p(phi)
        graph = graphs.build_graph(f, p, graph_threshold) if p <= graph_threshold else None
        period = period_point_exists(spec, p, phi, graph, random.Random(seed * 1_000_003 + p))
        if root != period:
            out.append(p)
    return out
