"""Dense univariate polynomials over Z and over F_p.

Coefficients are stored ascending: ``coeffs[i]`` multiplies ``x**i``.  The
zero polynomial has an empty coefficient tuple, so ``degree`` is -1 for it.
Both classes are immutable values; arithmetic returns new objects.

The plain-list helpers prefixed with ``_`` are the hot loops used by the
prime sweeps, where object overhead matters.
"""

import random

import numpy as np

DEFAULT_DEGREE_CAP = 1 << 20
EXHAUSTIVE_ROOT_LIMIT = 1 << 20


class ModulusMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class DegreeCapExceeded(ValueError):
    pass


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return c


class _Poly:
    __slots__ = ("coeffs",)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, a):
        return evaluate(self, a)

    def __str__(self):
        return format_poly(self)


class IntPoly(_Poly):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ()

    def __init__(self, coeffs=()):
        self.coeffs = tuple(_trim([int(c) for c in coeffs]))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial_plus(cls, k, m):
        """Return x^k + m."""
        return cls([m] + [0] * (k - 1) + [1])

    def _new(self, coeffs):
        return IntPoly(coeffs)

    def _check(self, other):
        if isinstance(other, int):
            return IntPoly((other,))
        if not isinstance(other, IntPoly):
            raise TypeError(f"cannot combine IntPoly with {type(other).__name__}")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Z", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __add__(self, other):
        other = self._check(other)
        return IntPoly(_add(self.coeffs, other.coeffs, None))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        return IntPoly(_sub(self.coeffs, other.coeffs, None))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return IntPoly(_mul(self.coeffs, other.coeffs, None))

    __rmul__ = __mul__

    def __pow__(self, e):
        return _power(self, e)


class ModPoly(_Poly):
    """Polynomial over F_p with coefficients stored as residues in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, coeffs, p):
        if p < 2:
            raise ValueError(f"modulus must be at least 2, got {p}")
        self.p = p
        self.coeffs = tuple(_trim([int(c) % p for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs, p):
        # coeffs already reduced and trimmed
        obj = cls.__new__(cls)
        obj.p = p
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, p):
        return cls((0, 1), p)

    def _new(self, coeffs):
        return ModPoly._raw(_trim(list(coeffs)), self.p)

    def _check(self, other):
        if isinstance(other, int):
            return ModPoly((other,), self.p)
        if not isinstance(other, ModPoly):
            raise TypeError(f"cannot combine ModPoly with {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = ModPoly((other,), self.p)
        return isinstance(other, ModPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"

    def __add__(self, other):
        other = self._check(other)
        return ModPoly._raw(_add(self.coeffs, other.coeffs, self.p), self.p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return ModPoly._raw([(-c) % p for c in self.coeffs], p)

    def __sub__(self, other):
        other = self._check(other)
        return ModPoly._raw(_sub(self.coeffs, other.coeffs, self.p), self.p)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return ModPoly._raw(_mul(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, e):
        return _power(self, e)

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        p = self.p
        inv = pow(self.coeffs[-1], -1, p)
        return ModPoly._raw([c * inv % p for c in self.coeffs], p)


# -- list kernels ----------------------------------------------------------


def _add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    if p is not None:
        out = [c % p for c in out]
    return _trim(out)


def _sub(a, b, p):
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    if p is not None:
        out = [c % p for c in out]
    return _trim(out)


def _mul(a, b, p):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    if p is not None:
        out = [c % p for c in out]
    return _trim(out)


def _rem_monic(a, h, p):
    """Remainder of a modulo monic h over F_p (lists, h[-1] == 1)."""
    dh = len(h) - 1
    if len(a) <= dh:
        return _trim([c % p for c in a])
    r = list(a)
    tail = h[:-1]
    for top in range(len(r) - 1, dh - 1, -1):
        c = r[top] % p
        if c:
            base = top - dh
            for i, hi in enumerate(tail):
                r[base + i] -= c * hi
        r[top] = 0
    return _trim([c % p for c in r[:dh]])


def _mul_raw(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _powmod(base, e, h, p):
    """base^e modulo monic h over F_p, left-to-right square and multiply."""
    result = [1]
    base = _rem_monic(base, h, p)
    for bit in bin(e)[2:]:
        result = _rem_monic(_mul_raw(result, result), h, p)
        if bit == "1":
            result = _rem_monic(_mul_raw(result, base), h, p)
    return result


def _xpow_mod(e, h, p):
    """x^e modulo monic h over F_p; multiplication by x is a shift."""
    dh = len(h) - 1
    if dh == 0:
        return []
    result = [1]
    tail = h[:-1]
    for bit in bin(e)[2:]:
        result = _rem_monic(_mul_raw(result, result), h, p)
        if bit == "1" and result:
            result = [0] + result
            if len(result) > dh:
                c = result.pop()
                if c:
                    for i, hi in enumerate(tail):
                        result[i] = (result[i] - c * hi) % p
                _trim(result)
    return _rem_monic(result, h, p)


def _gcd_lists(a, b, p):
    """Monic gcd over F_p of coefficient lists a, b (not both zero)."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        bm = [c * inv % p for c in b]
        a, b = b, _rem_monic(a, bm, p)
    if not a:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _divmod_monic(num, den, mod):
    """Quotient and remainder of num by monic den; mod is None over Z."""
    dd = len(den) - 1
    r = list(num)
    if len(r) <= dd:
        return [], _trim(r)
    q = [0] * (len(r) - dd)
    tail = den[:-1]
    for top in range(len(r) - 1, dd - 1, -1):
        c = r[top]
        if mod is not None:
            c %= mod
        if c:
            base = top - dd
            q[base] = c
            for i, di in enumerate(tail):
                if di:
                    r[base + i] -= c * di
        r[top] = 0
    rem = r[:dd]
    if mod is not None:
        rem = [c % mod for c in rem]
    return _trim(q), _trim(rem)


def _power(f, e):
    if e < 0:
        raise ValueError("negative exponent")
    result = f._new([1])
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


# -- public operations ------------------------------------------------------


def _same_domain(a, b):
    if type(a) is not type(b):
        raise TypeError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, ModPoly) and a.p != b.p:
        raise ModulusMismatch(f"moduli differ: {a.p} vs {b.p}")


def compose(outer, inner):
    """Return outer(inner(x)) by Horner's rule in the polynomial ring."""
    _same_domain(outer, inner)
    result = inner._new([])
    for c in reversed(outer.coeffs):
        result = result * inner + c
    return result


def iterate(f, n, degree_cap=DEFAULT_DEGREE_CAP):
    """Return the n-fold composition f o f o ... o f."""
    if n < 1:
        raise ValueError(f"iteration count must be positive, got {n}")
    if f.degree >= 1 and f.degree**n > degree_cap:
        raise DegreeCapExceeded(f"deg f^{n} = {f.degree}^{n} exceeds cap {degree_cap}")
    g = f
    for _ in range(n - 1):
        g = compose(f, g)
    return g


def divrem_exact(num, den):
    """Exact quotient num / den for monic den; raises InexactDivision otherwise."""
    _same_domain(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if not den.is_monic():
        raise ValueError("divisor must be monic")
    mod = num.p if isinstance(num, ModPoly) else None
    q, r = _divmod_monic(num.coeffs, den.coeffs, mod)
    if r:
        raise InexactDivision(f"nonzero remainder {r} dividing {num!r} by {den!r}")
    return num._new(q)


def derivative(f):
    coeffs = [i * c for i, c in enumerate(f.coeffs)][1:]
    if isinstance(f, ModPoly):
        coeffs = [c % f.p for c in coeffs]
    return f._new(coeffs)


def evaluate(f, a):
    """Value of f at a (reduced mod p for ModPoly)."""
    acc = 0
    if isinstance(f, ModPoly):
        p = f.p
        a %= p
        for c in reversed(f.coeffs):
            acc = (acc * a + c) % p
        return acc
    for c in reversed(f.coeffs):
        acc = acc * a + c
    return acc


def evaluate_all(f):
    """Values of a ModPoly at every element 0..p-1 as a numpy int64 array."""
    p = f.p
    if p >= 1 << 31:
        raise ValueError("vectorized evaluation needs p < 2^31")
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc *= xs
        acc += c
        acc %= p
    return acc


def reduce_mod_p(f, p):
    return ModPoly(f.coeffs, p)


def gcd_mod(a, b):
    """Monic gcd of two ModPolys by Euclid's algorithm."""
    _same_domain(a, b)
    return ModPoly._raw(_gcd_lists(a.coeffs, b.coeffs, a.p), a.p)


def frobenius_power(h, e):
    """Return x^e reduced modulo the monic polynomial h."""
    if h.degree < 1:
        raise ValueError("modulus polynomial must have degree >= 1")
    if not h.is_monic():
        raise ValueError("modulus polynomial must be monic")
    if e < 0:
        raise ValueError("negative exponent")
    return ModPoly._raw(_xpow_mod(e, list(h.coeffs), h.p), h.p)


def _linear_part(h):
    """Monic product of the distinct linear factors of h, i.e. gcd(x^p - x, h)."""
    p = h.p
    hm = list(h.monic().coeffs)
    xp = _xpow_mod(p, hm, p)
    xp = _sub(xp, [0, 1], p)
    return _gcd_lists(hm, xp, p)


def has_root_mod_p(h, exhaustive_limit=64):
    """True iff h has a root in F_p.

    Uses deg gcd(x^p - x, h) >= 1; tiny primes are decided by trying every
    residue.
    """
    if h.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    if h.degree < 1:
        return False
    p = h.p
    if p <= exhaustive_limit:
        return any(evaluate(h, a) == 0 for a in range(p))
    return len(_linear_part(h)) > 1


def roots_mod_p(h, rng=None, exhaustive_limit=EXHAUSTIVE_ROOT_LIMIT):
    """Sorted list of the distinct roots of h in F_p.

    Small primes are scanned exhaustively.  Above ``exhaustive_limit`` the
    product of linear factors is extracted with gcd(x^p - x, h) and split by
    random equal-degree splitting; pass ``rng`` (a ``random.Random``) for
    reproducible runs.
    """
    if h.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    p = h.p
    if h.degree < 1:
        return []
    if p <= exhaustive_limit:
        if p * len(h) < 1 << 12:
            return [a for a in range(p) if evaluate(h, a) == 0]
        return np.flatnonzero(evaluate_all(h) == 0).tolist()
    g = _linear_part(h)
    if len(g) == 1:
        return []
    if rng is None:
        rng = random.Random(0)
    roots = []
    _split_linear(g, p, rng, roots)
    return sorted(roots)


def _split_linear(g, p, rng, out):
    """Append the roots of g (monic, product of distinct linear factors) to out."""
    d = len(g) - 1
    if d == 0:
        return
    if d == 1:
        out.append((-g[0]) % p)
        return
    if p == 2:
        out.extend(a for a in (0, 1) if evaluate(ModPoly._raw(g, 2), a) == 0)
        return
    half = (p - 1) // 2
    while True:
        delta = rng.randrange(p)
        w = _powmod([delta, 1], half, g, p)
        w = _sub(w, [1], p)
        if not w:
            continue
        u = _gcd_lists(g, w, p)
        if 1 < len(u) < len(g):
            break
    v, r = _divmod_monic(g, u, p)
    assert not r
    _split_linear(u, p, rng, out)
    _split_linear(v, p, rng, out)


# -- text format --------------------------------------------------------------


def format_poly(f):
    """Comma-separated ascending coefficients, e.g. ``12,0,6,0,1``; zero is ``0``."""
    if f.is_zero():
        return "0"
    return ",".join(str(c) for c in f.coeffs)


def parse_poly(text, p=None):
    """Inverse of ``format_poly``; returns a ModPoly when p is given."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed polynomial text {text!r}") from None
    return IntPoly(coeffs) if p is None else ModPoly(coeffs, p)
