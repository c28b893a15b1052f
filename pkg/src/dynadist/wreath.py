"""Fixed-point statistics of the wreath product Z/nZ wr S_r.

The group acts on B(n, r) = Z/nZ x {0, ..., r-1} by
(b, i) -> (b + a_i, pi(i)) for sigma = ((a_0, ..., a_{r-1}), pi).
P_{r,n} is the proportion of group elements with at least one fixed point.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import derangements, r_k

EXACT_R_LIMIT = 20
BRUTE_CAP = 10**7


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class WreathParams:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError(f"n and r must be positive, got n={self.n}, r={self.r}")

    @property
    def order(self):
        return math.factorial(self.r) * self.n**self.r


@dataclass(frozen=True)
class WreathElement:
    shifts: tuple
    perm: tuple

    def __post_init__(self):
        if len(self.shifts) != len(self.perm):
            raise ValueError("shifts and perm must have the same length")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation of 0..{len(self.perm) - 1}")

    def act(self, point, n):
        b, i = point
        return (b + self.shifts[i]) % n, self.perm[i]


@dataclass(frozen=True)
class ProgressionSpec:
    start: int
    step: int
    k: int
    length: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise ValueError("start and step must be positive")
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.length < 0:
            raise ValueError("length must be nonnegative")

    def terms(self):
        return [self.start + self.step * i for i in range(self.length)]


def _check_shape(sigma, params):
    if len(sigma.shifts) != params.r:
        raise ValueError(f"element has {len(sigma.shifts)} coordinates, expected r = {params.r}")


def has_fixed_point(sigma, params):
    """True iff some position i has pi(i) = i and a zero shift there.

    Each such position fixes a whole copy of Z/nZ, so |Fix| = n * (number of
    such positions).
    """
    _check_shape(sigma, params)
    n = params.n
    return any(pi == i and a % n == 0 for i, (a, pi) in enumerate(zip(sigma.shifts, sigma.perm)))


def fixed_points(sigma, params):
    """Fixed points of sigma found by applying it to every point of B(n, r)."""
    _check_shape(sigma, params)
    n = params.n
    return [(b, i) for i in range(params.r) for b in range(n) if sigma.act((b, i), n) == (b, i)]


def elements(params):
    n, r = params.n, params.r
    for perm in itertools.permutations(range(r)):
        for shifts in itertools.product(range(n), repeat=r):
            yield WreathElement(shifts, perm)


def fixed_point_free_count(params):
    """Number of elements with no fixed point: sum_i C(r,i) D_i n^i (n-1)^(r-i)."""
    n, r = params.n, params.r
    return sum(math.comb(r, i) * derangements(i) * n**i * (n - 1) ** (r - i) for i in range(r + 1))


def p_rn_exact(params):
    order = params.order
    return Fraction(order - fixed_point_free_count(params), order)


def p_rn_brute(params, cap=BRUTE_CAP):
    """P_{r,n} by running has_fixed_point over every group element."""
    if params.order > cap:
        raise EnumerationTooLarge(f"group order {params.order} exceeds cap {cap}")
    hits = sum(1 for sigma in elements(params) if has_fixed_point(sigma, params))
    return Fraction(hits, params.order)


_Q_TERMS = 32


def _q_table():
    # q_i = D_i / i! = sum_{j <= i} (-1)^j / j!; constant to double precision past ~20
    out = []
    acc = 0.0
    term = 1.0
    for j in range(_Q_TERMS):
        acc += term
        out.append(acc)
        term *= -1.0 / (j + 1)
    return out


_Q = _q_table()


def _q(i):
    return _Q[min(i, _Q_TERMS - 1)]


def p_rn_float(r, n, terms=64):
    """Floating-point P_{r,n} for any r, summing the ``terms`` largest terms.

    Uses P = 1 - sum_{s=0}^{r} q_{r-s} x^s / s! with x = (n-1)/n, where the
    omitted terms (s >= terms) are below x^terms / terms!.
    """
    if r < 1 or n < 1:
        raise ValueError("r and n must be positive")
    x = (n - 1) / n
    parts = []
    weight = 1.0
    for s in range(min(r, terms - 1) + 1):
        parts.append(_q(r - s) * weight)
        weight *= x / (s + 1)
    return 1.0 - math.fsum(parts)


def p_k(n, k):
    """P_k(n) = P_{r_k(n), n}: exact Fraction for r_k(n) <= 20, float beyond."""
    r = r_k(n, k)
    if r <= EXACT_R_LIMIT:
        return p_rn_exact(WreathParams(n, r))
    return p_rn_float(r, n)


def check_theorem_bound(params):
    """Return (|P_{r,n} - (1 - e^{-1/n})|, (1 + 2^r)/r!, lhs < rhs)."""
    n, r = params.n, params.r
    p = float(p_rn_exact(params)) if r <= EXACT_R_LIMIT else p_rn_float(r, n)
    lhs = abs(p - (1.0 - math.exp(-1.0 / n)))
    rhs = (1 + 2**r) / math.factorial(r)
    return lhs, rhs, lhs < rhs


def pn_bound_gap(n, k):
    """|P_k(n)(1 - P_k(n)) - 1/n|."""
    p = p_k(n, k)
    if isinstance(p, Fraction):
        return float(abs(p * (1 - p) - Fraction(1, n)))
    return abs(p * (1 - p) - 1 / n)


def check_pn_bound(n, k):
    """Whether |P_k(n)(1 - P_k(n)) - 1/n| < 121/n^2."""
    p = p_k(n, k)
    if isinstance(p, Fraction):
        return abs(p * (1 - p) - Fraction(1, n)) < Fraction(121, n * n)
    return abs(p * (1 - p) - 1 / n) < 121 / n**2


def _step_weights(spec):
    # a_i = 2 P_k(b_i) (1 - P_k(b_i)) for each term of the progression
    out = []
    for b in spec.terms():
        p = p_k(b, spec.k)
        out.append(2 * p * (1 - p))
    return out


def _unify(values):
    if all(isinstance(v, Fraction) for v in values):
        return values
    return [float(v) for v in values]


def s_sequence(spec):
    """s_0, ..., s_N from s_i = s_{i-1} + (1 - s_{i-1}) a_i.

    Exact Fractions when every P_k(b_i) is exact, floats otherwise.
    """
    weights = _unify(_step_weights(spec))
    s = Fraction(0) if all(isinstance(w, Fraction) for w in weights) else 0.0
    out = [s]
    for a in weights:
        s = s + (1 - s) * a
        out.append(s)
    return out


def s_closed_form(spec):
    """1 - prod_{i <= N} (1 - a_i), the non-recursive form of s_N."""
    weights = _unify(_step_weights(spec))
    prod = Fraction(1) if all(isinstance(w, Fraction) for w in weights) else 1.0
    for a in weights:
        prod *= 1 - a
    return 1 - prod


def recurrence_limit_probe(a, t0, steps):
    """Run t_i = t_{i-1} + a_i (1 - t_{i-1}) for i = 1..steps and return t_steps.

    ``a`` is either a callable i -> a_i (i starting at 1) or an iterable.
    """
    if not 0 <= t0 <= 1:
        raise ValueError(f"t0 = {t0} is outside [0, 1]")
    seq = (a(i) for i in itertools.count(1)) if callable(a) else iter(a)
    t = t0
    for i, ai in zip(range(1, steps + 1), seq):
        if not 0 <= ai <= 1:
            raise ValueError(f"a_{i} = {ai} is outside [0, 1]")
        t = t + ai * (1 - t)
    return t


def s_brute(spec, cap=BRUTE_CAP):
    """s_N by enumerating every tuple of pairs (sigma_i, tau_i) over the product group.

    A tuple counts when for some level i exactly one of sigma_i, tau_i has a
    fixed point.
    """
    levels = []
    total = 1
    for b in spec.terms():
        params = WreathParams(b, r_k(b, spec.k))
        total *= params.order**2
        if total > cap:
            raise EnumerationTooLarge(f"product group has more than {cap} pair tuples")
        levels.append(params)
    if not levels:
        return Fraction(0)
    per_level = []
    for params in levels:
        flags = [has_fixed_point(sigma, params) for sigma in elements(params)]
        per_level.append([fs != ft for fs in flags for ft in flags])
    hits = sum(1 for combo in itertools.product(*per_level) if any(combo))
    return Fraction(hits, total)


def wreath_table(k, n_max):
    """Rows (n, r_k(n), P_k(n), |P(1-P) - 1/n|, 121/n^2) for n = 1..n_max."""
    rows = []
    for n in range(1, n_max + 1):
        p = p_k(n, k)
        rows.append({
            "n": n,
            "r": r_k(n, k),
            "P": str(p) if isinstance(p, Fraction) else repr(p),
            "P_float": float(p),
            "gap": pn_bound_gap(n, k),
            "bound": 121 / n**2,
        })
    return rows
