"""Truncated nerves: ``K(G, 1)`` of a group and ``B`` of a strict 2-group.

Simplices are stored through a *model* that knows how to list all
``n``-simplices, take faces, and apply degeneracies on labels.  Only the
nondegenerate ones are indexed; a face that lands on a degenerate simplex is
recorded by its label.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import SizeBound, ValidationError
from .linalg import smith_normal_form

MAX_SIMPLICES = 20_000
MATRIX_BOUND = 4_000_000


class GroupNerveModel:
    """Bar-construction simplices ``(g1, ..., gn)``."""

    def __init__(self, G):
        self.G = G

    def simplices(self, n):
        for t in itertools.product(range(self.G.order), repeat=n):
            yield t

    def nondegenerate(self, n):
        return [t for t in itertools.product(range(1, self.G.order), repeat=n)]

    def face(self, s, i):
        n = len(s)
        if n == 0:
            raise ValidationError("a vertex has no faces")
        if i == 0:
            return s[1:]
        if i == n:
            return s[:-1]
        return s[: i - 1] + (self.G.mul(s[i - 1], s[i]),) + s[i + 1:]

    def degeneracy(self, s, i):
        return s[:i] + (0,) + s[i:]

    def is_degenerate(self, s):
        return 0 in s

    def text(self, s):
        return " ".join(map(str, s)) if s else "*"


def _pairs(n):
    return list(itertools.combinations(range(n + 1), 2))


def _triples(n):
    return list(itertools.combinations(range(n + 1), 3))


class TwoGroupNerveModel:
    """Simplices of ``B`` for a strict 2-group ``T``.

    An ``n``-simplex labels each edge ``i<j`` by an object ``x_ij`` and each
    triangle ``i<j<k`` by a morphism ``x_ij (x) x_jk -> x_ik``; on every
    tetrahedron ``i<j<k<l`` the two composites ``x_ij x_jk x_kl -> x_il``
    agree.  Labels are ``(edges, triangles)`` in lexicographic order.
    """

    def __init__(self, T):
        self.T = T
        M = T.morphisms
        self._hom, self._out = {}, {}
        for m in M:
            self._hom.setdefault((T.src(m), T.tgt(m)), []).append(m)
            self._out.setdefault(T.src(m), []).append(m)

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def _tetra_ok(self, g, h, k, m, a, b, c, d):
        # a: g m -> n, b: h k -> m, c: g h -> l, d: l k -> n
        T = self.T
        lhs = T.compose(T.tensor(T.ident(g), b), a)
        rhs = T.compose(T.tensor(c, T.ident(k)), d)
        return lhs == rhs

    def simplices(self, n):
        T = self.T
        O = T.objects
        if n == 0:
            yield ((), ())
        elif n == 1:
            for g in O:
                yield ((g,), ())
        elif n == 2:
            # edges (01, 02, 12)
            for g in O:
                for h in O:
                    for c in self._from(O.mul(g, h)):
                        yield ((g, T.tgt(c), h), (c,))
        elif n == 3:
            # edges (01, 02, 03, 12, 13, 23); triangles (012, 013, 023, 123)
            for g in O:
                for h in O:
                    for k in O:
                        for c in self._from(O.mul(g, h)):
                            ell = T.tgt(c)
                            for b in self._from(O.mul(h, k)):
                                m = T.tgt(b)
                                for a in self._from(O.mul(g, m)):
                                    nn = T.tgt(a)
                                    for d in self.hom(O.mul(ell, k), nn):
                                        if self._tetra_ok(g, h, k, m, a, b, c, d):
                                            yield ((g, ell, nn, h, m, k), (c, a, d, b))
        else:
            raise SizeBound("2-group nerves are built up to dimension 3")

    def _from(self, x):
        return self._out.get(x, [])

    def nondegenerate(self, n):
        return [s for s in self.simplices(n) if not self.is_degenerate(s)]

    @staticmethod
    def _dim(s):
        k = len(s[0])
        return {0: 0, 1: 1, 3: 2, 6: 3}[k]

    def face(self, s, i):
        n = self._dim(s)
        if n == 0:
            raise ValidationError("a vertex has no faces")
        keep = [v for v in range(n + 1) if v != i]
        edges = dict(zip(_pairs(n), s[0]))
        tris = dict(zip(_triples(n), s[1]))
        new_edges = tuple(edges[(keep[p], keep[q])] for p, q in _pairs(n - 1))
        new_tris = tuple(tris[(keep[p], keep[q], keep[r])] for p, q, r in _triples(n - 1))
        return (new_edges, new_tris)

    def degeneracy(self, s, i):
        n = self._dim(s)
        T = self.T

        def old(v):
            return v if v <= i else v - 1

        edges = dict(zip(_pairs(n), s[0]))
        tris = dict(zip(_triples(n), s[1]))

        def edge(p, q):
            return 0 if p == q else edges[(p, q)]

        new_edges = tuple(edge(old(p), old(q)) for p, q in _pairs(n + 1))
        new_tris = []
        for p, q, r in _triples(n + 1):
            a, b, c = old(p), old(q), old(r)
            if a == b or b == c:
                # unit whiskered into an edge: the identity of the remaining edge
                new_tris.append(T.ident(edge(a, c)))
            else:
                new_tris.append(tris[(a, b, c)])
        return (new_edges, tuple(new_tris))

    def is_degenerate(self, s):
        n = self._dim(s)
        return any(self.degeneracy(self.face(s, i + 1), i) == s for i in range(n))

    def text(self, s):
        e = " ".join(map(str, s[0]))
        t = " ".join(map(str, s[1]))
        return f"{e or '*'} | {t or '*'}"


@dataclass
class TruncatedSimplicialSet:
    """Nondegenerate simplices up to dimension ``N`` and their faces.

    ``faces[n][s, i]`` is the index of ``d_i`` of simplex ``s`` when that face
    is nondegenerate and ``-1`` otherwise; ``degenerate_faces[n]`` maps
    ``(s, i)`` to the label of a degenerate face.
    """

    model: object
    N: int
    labels: list
    faces: list
    degenerate_faces: list = field(default_factory=list)

    def count(self, n):
        return len(self.labels[n])

    def index(self, n, label):
        return self._index[n].get(label)

    def __post_init__(self):
        self._index = [{lab: i for i, lab in enumerate(labs)} for labs in self.labels]

    def key(self, n, label):
        """``('nd', index)`` or ``('deg', label)``."""
        i = self.index(n, label)
        return ("nd", i) if i is not None else ("deg", label)

    def face_key(self, n, key, i):
        kind, v = key
        if kind == "nd":
            j = int(self.faces[n][v, i])
            if j >= 0:
                return ("nd", j)
            lab = self.degenerate_faces[n].get((v, i))
            return ("deg", lab) if lab is not None else ("missing", (n, v, i))
        if kind == "deg":
            return self.key(n - 1, self.model.face(v, i))
        return key


def _build(model, N):
    labels = []
    for n in range(N + 1):
        labs = model.nondegenerate(n)
        if len(labs) > MAX_SIMPLICES:
            raise SizeBound(f"{len(labs)} nondegenerate {n}-simplices exceed {MAX_SIMPLICES}")
        labels.append(labs)
    index = [{lab: i for i, lab in enumerate(labs)} for labs in labels]
    faces = [np.zeros((len(labels[0]), 0), dtype=np.int64)]
    degenerate = [{}]
    for n in range(1, N + 1):
        F = np.full((len(labels[n]), n + 1), -1, dtype=np.int64)
        deg = {}
        for s, lab in enumerate(labels[n]):
            for i in range(n + 1):
                f = model.face(lab, i)
                j = index[n - 1].get(f)
                if j is None:
                    deg[(s, i)] = f
                else:
                    F[s, i] = j
        faces.append(F)
        degenerate.append(deg)
    return TruncatedSimplicialSet(model, N, labels, faces, degenerate)


def nerve_group(G, N=3):
    """Normalized nerve ``K(G, 1)`` through dimension ``N <= 4``."""
    if N > 4:
        raise SizeBound("group nerves are built up to dimension 4")
    if (G.order - 1) ** N > MAX_SIMPLICES:
        raise SizeBound(f"{(G.order - 1) ** N} simplices exceed {MAX_SIMPLICES}")
    return _build(GroupNerveModel(G), N)


def nerve_two_group(T, N=3):
    """Normalized nerve of a strict 2-group through dimension ``N <= 3``."""
    if N > 3:
        raise SizeBound("2-group nerves are built up to dimension 3")
    # a tetrahedron is fixed by three edges and three of its triangles
    total = T.morphisms.order ** 3 if N == 3 else 0
    if total > 50 * MAX_SIMPLICES:
        raise SizeBound(f"about {total} candidate tetrahedra")
    return _build(TwoGroupNerveModel(T), N)


@dataclass
class SimplicialCheck:
    ok: bool
    witness: tuple = None  # (i, j, n, simplex index)

    def __bool__(self):
        return self.ok

    def line(self):
        return "PASS" if self.ok else f"FAIL d{self.witness[0]} d{self.witness[1]} on simplex {self.witness[3]} of dimension {self.witness[2]}"


def check_simplicial(S):
    """``d_i d_j = d_{j-1} d_i`` for ``i < j`` on every stored simplex."""
    for n in range(2, S.N + 1):
        for s in range(S.count(n)):
            key = ("nd", s)
            for j in range(n + 1):
                for i in range(j):
                    lhs = S.face_key(n - 1, S.face_key(n, key, j), i)
                    rhs = S.face_key(n - 1, S.face_key(n, key, i), j - 1)
                    if lhs != rhs:
                        return SimplicialCheck(False, (i, j, n, s))
    return SimplicialCheck(True)


def boundary_matrix(S, n):
    """Normalized ``d_n: C_n -> C_{n-1}``; degenerate faces drop out."""
    rows, cols = S.count(n - 1), S.count(n)
    if rows * cols > MATRIX_BOUND:
        raise SizeBound(f"boundary matrix {rows}x{cols} exceeds the bound")
    D = np.zeros((rows, cols), dtype=np.int64)
    F = S.faces[n]
    for i in range(n + 1):
        sign = -1 if i % 2 else 1
        ok = F[:, i] >= 0
        np.add.at(D, (F[ok, i], np.flatnonzero(ok)), sign)
    return D


@dataclass
class HomologyReport:
    """``groups[k] = (free rank, torsion factors)`` for ``k <= N - 1``."""

    groups: dict

    def describe(self, k):
        rank, torsion = self.groups[k]
        parts = [f"Z/{d}" for d in torsion]
        if rank == 1:
            parts.insert(0, "Z")
        elif rank > 1:
            parts.insert(0, f"Z^{rank}")
        return " x ".join(parts) if parts else "0"

    def lines(self):
        return [f"H_{k} = {self.describe(k)}" for k in sorted(self.groups)]


def homology(S, k=None):
    """Integral homology of the normalized chains up to ``k`` (default ``N-1``)."""
    top = S.N - 1 if k is None else k
    if top > S.N - 1:
        raise ValidationError(f"homology above dimension {S.N - 1} is not determined by the truncation")
    ranks, factors = {}, {}
    for n in range(1, top + 2):
        snf = smith_normal_form(boundary_matrix(S, n), rows=S.count(n - 1), cols=S.count(n), transforms="")
        ranks[n] = snf.rank
        factors[n] = snf.diagonal
    groups = {}
    for q in range(top + 1):
        free = S.count(q) - ranks.get(q, 0) - ranks[q + 1]
        groups[q] = (free, [d for d in factors[q + 1] if d > 1])
    return HomologyReport(groups)


def export(S):
    """Line-oriented dump of simplices and their faces."""
    out = []
    for n in range(S.N + 1):
        for s, lab in enumerate(S.labels[n]):
            out.append(f"simplex {n} {s} : {S.model.text(lab)}")
            for i in range(n + 1 if n else 0):
                j = int(S.faces[n][s, i])
                out.append(f"face {i} -> {j if j >= 0 else 'degenerate'}")
    return "\n".join(out) + "\n"
