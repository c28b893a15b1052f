"""Functional graphs of polynomial maps on F_p.

A functional graph stores the image of every residue, so each vertex has
out-degree one and every component is a cycle with rooted trees hanging off
its vertices.  Structural analysis (periodic points, cycle lengths, the
canonical code) is computed lazily and cached on the graph object.
"""

from collections import Counter
from functools import cached_property

import numpy as np

from .polynomials import IntPoly, ModPoly, evaluate_all, reduce_mod_p

GRAPH_THRESHOLD = 1 << 24
CODE_VERSION = b"FG1"


class GraphTooLarge(ValueError):
    pass


class FunctionalGraph:
    """Self-map of {0, ..., p-1} given by its image array."""

    def __init__(self, p, image):
        image = np.asarray(image, dtype=np.int64)
        if image.shape != (p,):
            raise ValueError(f"image must have length {p}")
        if p and (image.min() < 0 or image.max() >= p):
            raise ValueError("image entries must lie in [0, p)")
        self.p = p
        self.image = image

    def __repr__(self):
        return f"FunctionalGraph(p={self.p})"

    @cached_property
    def _peel(self):
        # Strip in-degree-zero vertices round by round.  Whatever survives is
        # the set of periodic points, and the removal order lists every tree
        # vertex after all of its children.
        p, image = self.p, self.image
        indeg = np.bincount(image, minlength=p)
        alive = np.ones(p, dtype=bool)
        leaves = np.flatnonzero(indeg == 0)
        mark = np.empty(p, dtype=np.int64)
        order = []
        while leaves.size:
            alive[leaves] = False
            order.append(leaves)
            targets = image[leaves]
            np.subtract.at(indeg, targets, 1)
            fresh = targets[indeg[targets] == 0]
            if fresh.size > 1:
                # a vertex whose last two children fell together shows up twice
                idx = np.arange(fresh.size)
                mark[fresh] = idx
                fresh = fresh[mark[fresh] == idx]
            leaves = fresh
        order = np.concatenate(order) if order else np.empty(0, dtype=np.int64)
        return alive, order

    @property
    def periodic_mask(self):
        return self._peel[0]

    @cached_property
    def periodic_points(self):
        return np.flatnonzero(self.periodic_mask)

    @cached_property
    def _cycles(self):
        # Label each periodic point by the smallest vertex on its cycle using
        # pointer doubling on the induced permutation.
        pts = self.periodic_points
        size = pts.size
        pos = np.full(self.p, -1, dtype=np.int64)
        pos[pts] = np.arange(size)
        succ = pos[self.image[pts]]
        rep = np.arange(size)
        jump = succ.copy()
        steps = 1
        while steps < size:
            rep = np.minimum(rep, rep[jump])
            jump = jump[jump]
            steps *= 2
        reps, inverse, counts = np.unique(rep, return_inverse=True, return_counts=True)
        return counts[inverse], pts[reps], counts

    @cached_property
    def cycle_length(self):
        """Array with the cycle length of each periodic point (0 elsewhere)."""
        lengths = np.zeros(self.p, dtype=np.int64)
        lengths[self.periodic_points] = self._cycles[0]
        return lengths

    @cached_property
    def in_degree(self):
        return np.bincount(self.image, minlength=self.p)


def build_graph(f, p, threshold=GRAPH_THRESHOLD):
    """Functional graph of [f]_p on F_p by evaluating f at every residue."""
    if p > threshold:
        raise GraphTooLarge(f"p = {p} exceeds the graph threshold {threshold}")
    if isinstance(f, IntPoly):
        f = reduce_mod_p(f, p)
    elif not isinstance(f, ModPoly) or f.p != p:
        raise ValueError("f must be an IntPoly or a ModPoly over F_p")
    if f.is_zero():
        return FunctionalGraph(p, np.zeros(p, dtype=np.int64))
    return FunctionalGraph(p, evaluate_all(f))


def cycle_spectrum(g):
    """Sorted tuple of (cycle length, number of cycles of that length)."""
    _, _, sizes = g._cycles
    return tuple(sorted(Counter(sizes.tolist()).items()))


def format_spectrum(spectrum):
    return " ".join(f"{length}:{count}" for length, count in spectrum)


def points_of_period(g, n):
    """Ascending list of vertices lying on cycles of length exactly n."""
    return np.flatnonzero(g.cycle_length == n).tolist()


def has_period(g, n):
    return bool(np.any(g.cycle_length == n))


def _min_rotation(seq):
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(seq)
    s = seq + seq
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_code(g):
    """Byte string that is equal for two graphs iff they are isomorphic.

    Trees are encoded AHU-style as balanced parentheses with children sorted,
    each cycle as the least rotation of its sequence of root-tree codes, and
    the graph as the sorted list of component codes.
    """
    alive, order = g._peel
    image = g.image.tolist()
    children = {}
    for v in order.tolist():
        kids = children.pop(v, ())
        code = b"(" + b"".join(sorted(kids)) + b")"
        children.setdefault(image[v], []).append(code)

    seen = set()
    components = []
    for start in g.periodic_points.tolist():
        if start in seen:
            continue
        cycle = []
        v = start
        while v not in seen:
            seen.add(v)
            cycle.append(b"(" + b"".join(sorted(children.get(v, ()))) + b")")
            v = image[v]
        ranks = {c: i for i, c in enumerate(sorted(set(cycle)))}
        k = _min_rotation([ranks[c] for c in cycle])
        components.append(b"[" + b"".join(cycle[k:] + cycle[:k]) + b"]")
    components.sort()
    return CODE_VERSION + b":" + b"".join(components)


def _invariants(g):
    return g.p, cycle_spectrum(g), np.bincount(g.in_degree).tolist()


def isomorphic(g1, g2):
    # cheap invariants can only refute; equality needs the canonical codes
    if _invariants(g1) != _invariants(g2):
        return False
    return canonical_code(g1) == canonical_code(g2)


def distinguishable(polys, p, threshold=GRAPH_THRESHOLD):
    """True iff the graphs of the given maps mod p are pairwise non-isomorphic."""
    if len(polys) < 2:
        raise ValueError("need at least two maps")
    graphs = [build_graph(f, p, threshold) for f in polys]
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            if isomorphic(graphs[i], graphs[j]):
                return False
    return True


def relabel(g, perm):
    """Graph of phi o f o phi^-1 where perm[a] = phi(a)."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    return FunctionalGraph(g.p, perm[g.image[inv]])
