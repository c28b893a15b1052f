"""Quick invariant checks runnable from the command line (``dynadist selftest``)."""

from fractions import Fraction
from math import factorial, prod

import numpy as np

from . import graphs
from .arith import divisors, moebius, r_k, rencontres
from .dynatomic import DynatomicSpec, classify_root, dynatomic_int, dynatomic_mod
from .polynomials import IntPoly, evaluate, iterate, reduce_mod_p, roots_mod_p
from .wreath import (
    ProgressionSpec,
    WreathParams,
    check_theorem_bound,
    p_rn_brute,
    p_rn_exact,
    s_brute,
    s_closed_form,
    s_sequence,
)


def _moebius_sums():
    return all(sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0) for n in range(1, 2001))


def _rencontres_rows():
    return all(sum(rencontres(r, i) for i in range(r + 1)) == factorial(r) for r in range(13))


def _dynatomic_product():
    for k in (2, 3):
        for m in range(-2, 4):
            f = IntPoly.monomial_plus(k, m)
            for n in range(1, 5):
                lhs = prod((dynatomic_int(f, d) for d in divisors(n)), start=IntPoly([1]))
                if lhs != iterate(f, n) - IntPoly.x():
                    return False
    return True


def _degree_law():
    return all(
        dynatomic_int(IntPoly.monomial_plus(k, 1), n).degree == n * r_k(n, k)
        for k in (2, 3) for n in range(1, 6)
    )


def _mod_matches_int():
    for n in range(1, 5):
        phi = dynatomic_int(IntPoly.monomial_plus(2, 3), n)
        for p in (2, 3, 5, 7, 101):
            if dynatomic_mod(DynatomicSpec(2, 3, n), p) != reduce_mod_p(phi, p):
                return False
    return True


def _classification_scan():
    for p in (3, 5, 7, 11, 13):
        for m in range(0, 4):
            for n in range(1, 4):
                spec = DynatomicSpec(2, m, n)
                phi = dynatomic_mod(spec, p)
                for alpha in roots_mod_p(phi):
                    classify_root(spec, p, alpha, phi)
    return True


def _converse():
    for p in (5, 7, 11, 13, 17):
        for m in range(0, 4):
            f = IntPoly.monomial_plus(2, m)
            g = graphs.build_graph(f, p)
            for n in range(1, 4):
                phi = dynatomic_mod(DynatomicSpec(2, m, n), p)
                if any(evaluate(phi, a) for a in graphs.points_of_period(g, n)):
                    return False
    return True


def _relabeling():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = int(rng.choice([101, 211, 307]))
        g = graphs.build_graph(IntPoly.monomial_plus(2, int(rng.integers(0, p))), p)
        if graphs.canonical_code(g) != graphs.canonical_code(graphs.relabel(g, rng.permutation(p))):
            return False
    return True


def _wreath_oracle():
    return all(
        p_rn_exact(WreathParams(n, r)) == p_rn_brute(WreathParams(n, r))
        for r in range(1, 5) for n in range(1, 5)
    )


def _theorem_bound():
    return all(check_theorem_bound(WreathParams(n, r))[2] for r in range(1, 16) for n in range(1, 16))


def _recurrence():
    spec = ProgressionSpec(1, 1, 2, 3)
    seq = s_sequence(spec)
    return seq[-1] == s_closed_form(spec) == s_brute(spec) and seq[1] == Fraction(1, 2)


CHECKS = [
    ("moebius sums over divisors", _moebius_sums),
    ("rencontres rows sum to r!", _rencontres_rows),
    ("dynatomic product identity", _dynatomic_product),
    ("dynatomic degree law", _degree_law),
    ("mod-p construction matches reduction", _mod_matches_int),
    ("root classification never fails", _classification_scan),
    ("period-n points are dynatomic roots", _converse),
    ("canonical code relabeling invariance", _relabeling),
    ("wreath exact equals enumeration", _wreath_oracle),
    ("fixed-point proportion bound", _theorem_bound),
    ("s-sequence recurrence", _recurrence),
]


def run(out=print):
    failures = 0
    for name, check in CHECKS:
        try:
            ok = check()
        except Exception as exc:  # report and keep going
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        failures += not ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}")
    return failures
