"""Independent reference implementations used only by the tests.

Nothing here imports the library's linear algebra or OS algebra code: the
exterior algebra is handled with plain dicts over all subsets, ranks with a
separate Gaussian elimination, and matroid invariants by brute force.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- elimination -----------------------------------------------------------

def _norm(x, p):
    return Fraction(x) if p is None else int(x) % p


def _inv(x, p):
    return 1 / x if p is None else pow(int(x), -1, p)


def echelon(rows, ncols, p=None):
    """Row-reduce over Q (p None) or F_p; returns the nonzero reduced rows."""
    mat = [[_norm(x, p) for x in r] for r in rows]
    out = []
    for c in range(ncols):
        piv = next((i for i, r in enumerate(mat) if r[c] != 0), None)
        if piv is None:
            continue
        row = mat.pop(piv)
        inv = _inv(row[c], p)
        row = [_norm(x * inv, p) for x in row]
        new = []
        for r in mat:
            if r[c] != 0:
                f = r[c]
                r = [_norm(x - f * y, p) for x, y in zip(r, row)]
            if any(x != 0 for x in r):
                new.append(r)
        mat = new
        out.append(row)
    return out


def rank_of(rows, ncols, p=None):
    return len(echelon(rows, ncols, p)) if rows else 0


# -- exterior algebra --------------------------------------------------------

def wedge(s, t):
    """e_s * e_t for sorted tuples; returns (sign, sorted tuple) or (0, None)."""
    if set(s) & set(t):
        return 0, None
    seq = list(s) + list(t)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv, tuple(sorted(seq))


def boundary_of(s):
    return {s[:j] + s[j + 1:]: (-1) ** j for j in range(len(s))}


class BruteOS:
    """A(M) = Lambda / I with I spanned by e_T * d(e_C), degree by degree."""

    def __init__(self, n, circuits, p=None):
        self.n, self.p = n, p
        self.circuits = [tuple(sorted(c)) for c in circuits]
        top = n
        self.mono = [list(itertools.combinations(range(1, n + 1), k)) for k in range(top + 1)]
        self.idx = [{s: i for i, s in enumerate(ms)} for ms in self.mono]
        self.ideal = []
        for k in range(top + 1):
            gens = []
            for c in self.circuits:
                dc = boundary_of(c)
                deg_t = k - (len(c) - 1)
                if deg_t < 0:
                    continue
                for t in self.mono[deg_t]:
                    vec = [0] * len(self.mono[k])
                    for s, sg in dc.items():
                        sign, u = wedge(t, s)
                        if sign:
                            vec[self.idx[k][u]] += sign * sg
                    if any(vec):
                        gens.append(vec)
            self.ideal.append(echelon(gens, len(self.mono[k]), p) if gens else [])

    def dims(self):
        out = [len(m) - len(i) for m, i in zip(self.mono, self.ideal)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def _mult_rank(self, v, k):
        """Rank of .v from Lambda^k / I^k to Lambda^(k+1) / I^(k+1)."""
        if k + 1 >= len(self.mono):
            return 0
        ncols = len(self.mono[k + 1])
        rows = []
        for s in self.mono[k]:
            vec = [0] * ncols
            for i, c in enumerate(v, 1):
                if c == 0:
                    continue
                sign, u = wedge(s, (i,))
                if sign:
                    vec[self.idx[k + 1][u]] += sign * c
            rows.append(vec)
        base = len(self.ideal[k + 1])
        return rank_of(self.ideal[k + 1] + rows, ncols, self.p) - base

    def profile(self, v, top):
        ranks = [self._mult_rank(v, k) for k in range(top + 1)]
        d = [len(self.mono[k]) - len(self.ideal[k]) for k in range(top + 1)]
        return tuple(d[k] - ranks[k] - (ranks[k - 1] if k else 0) for k in range(top + 1))

    def is_zero(self, coeffs, k):
        """Is sum coeffs[S] e_S (any S of size k) zero in A^k?"""
        vec = [0] * len(self.mono[k])
        for s, c in coeffs.items():
            sign, u = wedge((), tuple(s))
            vec[self.idx[k][tuple(sorted(s))]] += c * (-1) ** sum(
                1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b])
        base = len(self.ideal[k])
        return rank_of(self.ideal[k] + [vec], len(self.mono[k]), self.p) == base


# -- matroid oracles ---------------------------------------------------------

def graph_cycles(edges):
    """Edge sets of simple cycles of a multigraph (self-loops are 1-cycles)."""
    m = len(edges)
    out = set()
    for k in range(1, m + 1):
        for sub in itertools.combinations(range(m), k):
            deg = {}
            for j in sub:
                a, b = edges[j]
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            if k == 1:
                if edges[sub[0]][0] == edges[sub[0]][1]:
                    out.add((sub[0] + 1,))
                continue
            if any(edges[j][0] == edges[j][1] for j in sub):
                continue
            if any(d != 2 for d in deg.values()):
                continue
            # connected?
            verts = list(deg)
            seen = {verts[0]}
            frontier = [verts[0]]
            while frontier:
                x = frontier.pop()
                for j in sub:
                    a, b = edges[j]
                    for y, z in ((a, b), (b, a)):
                        if y == x and z not in seen:
                            seen.add(z)
                            frontier.append(z)
            if len(seen) == len(verts):
                out.add(tuple(j + 1 for j in sub))
    return sorted(out)


def rank_from_circuits(circuits, s):
    s = set(s)
    best = 0
    for k in range(len(s), -1, -1):
        for sub in itertools.combinations(sorted(s), k):
            if not any(set(c) <= set(sub) for c in circuits):
                return k
    return best


def tutte(n, circuits):
    """Tutte polynomial as a dict {(i, j): coeff} via the corank-nullity sum."""
    r = rank_from_circuits(circuits, range(1, n + 1))
    poly = {}
    for k in range(n + 1):
        for sub in itertools.combinations(range(1, n + 1), k):
            rs = rank_from_circuits(circuits, sub)
            key = (r - rs, k - rs)  # (x-1)^(r-r(S)) (y-1)^(|S|-r(S))
            poly[key] = poly.get(key, 0) + 1
    # expand in x, y
    from math import comb
    out = {}
    for (a, b), c in poly.items():
        for i in range(a + 1):
            for j in range(b + 1):
                coef = c * comb(a, i) * (-1) ** (a - i) * comb(b, j) * (-1) ** (b - j)
                out[(i, j)] = out.get((i, j), 0) + coef
    return {k: v for k, v in out.items() if v}


def beta_from_tutte(n, circuits):
    """Coefficient of x in the Tutte polynomial (Crapo's beta for n >= 2)."""
    return tutte(n, circuits).get((1, 0), 0)


def exhaustive_weak(table, n1, circ1, circ2):
    """Literal weak-map definition over all subsets of [n1]."""
    for k in range(n1 + 1):
        for sub in itertools.combinations(range(1, n1 + 1), k):
            img = [table[i] for i in sub]
            if 0 in img or len(set(img)) != len(img):
                continue
            if any(set(c) <= set(img) for c in circ2):
                continue
            if any(set(c) <= set(sub) for c in circ1):
                return False
    return True
