"""Parenthesized tensor words, rotation paths, and their evaluation.

A move rewrites ``(x*y)*z`` to ``x*(y*z)`` (direction +1) or back (-1) at a
node addressed by its path from the root (0 = left, 1 = right).  In a
skeletal Gr-category every such path is an automorphism of the product of
the leaves; :func:`evaluate_path` returns its component in ``A``.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cohomology import is_cocycle
from .errors import ExpressionSyntaxError, LabelOutOfRange, SizeBound, ValidationError

MAX_WORD = 6
UNIT = "I"


@dataclass(frozen=True)
class Leaf:
    name: str

    @property
    def is_unit(self):
        return self.name == UNIT


@dataclass(frozen=True)
class Node:
    left: object
    right: object


def leaves(t):
    if isinstance(t, Leaf):
        return [t]
    return leaves(t.left) + leaves(t.right)


def size(t):
    return 1 if isinstance(t, Leaf) else size(t.left) + size(t.right)


def to_text(t):
    if isinstance(t, Leaf):
        return t.name

    def part(s):
        return to_text(s) if isinstance(s, Leaf) else f"({to_text(s)})"

    return f"{part(t.left)}*{part(t.right)}"


# ---------------------------------------------------------------------------
# parsing


def parse(expr):
    """Parse a fully parenthesized word such as ``(a*b)*c``.

    Identifiers are letters, digits and underscores; ``I`` is the unit.  A
    chain like ``a*b*c`` is rejected as ambiguous.  Errors carry the 0-based
    character position.
    """
    tokens = []
    i = 0
    while i < len(expr):
        ch = expr[i]
        if ch.isspace():
            i += 1
        elif ch in "()*":
            tokens.append((ch, i))
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < len(expr) and (expr[j].isalnum() or expr[j] == "_"):
                j += 1
            tokens.append(("id", i, expr[i:j]))
            i = j
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    end = len(expr)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", end)

    def atom():
        nonlocal pos
        tok = peek()
        if tok[0] == "id":
            pos += 1
            return Leaf(tok[2])
        if tok[0] == "(":
            pos += 1
            t = product()
            if peek()[0] != ")":
                raise ExpressionSyntaxError("expected ')'", peek()[1])
            pos += 1
            return t
        what = "end of input" if tok[0] == "end" else repr(tok[0])
        raise ExpressionSyntaxError(f"unexpected {what}", tok[1])

    def product():
        nonlocal pos
        left = atom()
        if peek()[0] != "*":
            return left
        pos += 1
        right = atom()
        if peek()[0] == "*":
            raise ExpressionSyntaxError("ambiguous product; add parentheses", peek()[1])
        return Node(left, right)

    t = product()
    if pos != len(tokens):
        raise ExpressionSyntaxError(f"unexpected {peek()[0]!r}", peek()[1])
    return t


def strip_units(t):
    """Replace ``I*x`` and ``x*I`` by ``x``."""
    if isinstance(t, Leaf):
        return t
    left, right = strip_units(t.left), strip_units(t.right)
    if isinstance(left, Leaf) and left.is_unit:
        return right
    if isinstance(right, Leaf) and right.is_unit:
        return left
    return Node(left, right)


# ---------------------------------------------------------------------------
# trees and moves


def subtree(t, pos):
    for step in pos:
        t = t.right if step else t.left
    return t


def replace(t, pos, new):
    if not pos:
        return new
    if pos[0]:
        return Node(t.left, replace(t.right, pos[1:], new))
    return Node(replace(t.left, pos[1:], new), t.right)


def leaf_offset(t, pos):
    """Number of leaves strictly left of the node at ``pos``."""
    k = 0
    for step in pos:
        if step:
            k += size(t.left)
        t = t.right if step else t.left
    return k


def rotate(t, pos, direction):
    s = subtree(t, pos)
    if direction == 1:
        if not (isinstance(s, Node) and isinstance(s.left, Node)):
            raise ValidationError(f"no right rotation at {pos}")
        new = Node(s.left.left, Node(s.left.right, s.right))
    elif direction == -1:
        if not (isinstance(s, Node) and isinstance(s.right, Node)):
            raise ValidationError(f"no left rotation at {pos}")
        new = Node(Node(s.left, s.right.left), s.right.right)
    else:
        raise ValidationError("direction must be +1 or -1")
    return replace(t, pos, new)


@dataclass(frozen=True)
class AssocPath:
    start: object
    moves: tuple = ()

    @property
    def end(self):
        t = self.start
        for pos, d in self.moves:
            t = rotate(t, pos, d)
        return t

    def __len__(self):
        return len(self.moves)

    def reverse(self):
        return AssocPath(self.end, tuple((pos, -d) for pos, d in reversed(self.moves)))

    def then(self, other):
        if self.end != other.start:
            raise ValidationError("paths are not composable")
        return AssocPath(self.start, self.moves + other.moves)


def _spine_site(t):
    pos = ()
    while isinstance(t, Node):
        if isinstance(t.left, Node):
            return pos
        t, pos = t.right, pos + (1,)
    return None


def _deep_site(t):
    best = None

    def walk(s, pos):
        nonlocal best
        if isinstance(s, Leaf):
            return
        if isinstance(s.left, Node) and (best is None or len(pos) > len(best)):
            best = pos
        walk(s.left, pos + (0,))
        walk(s.right, pos + (1,))

    walk(t, ())
    return best


def path_to_right_comb(t, strategy="spine"):
    """Rotation path from ``t`` to the right comb.

    ``"spine"`` (canonical) rotates at the highest node of the right spine
    whose left child is a product; ``"deep"`` rotates at the deepest such
    node anywhere, leftmost on ties.  For ``((w*x)*y)*z`` these are the two
    sides of the pentagon.
    """
    if any(leaf.is_unit for leaf in leaves(t)) and size(t) > 1:
        raise ValidationError("strip unit leaves before computing paths")
    site = _spine_site if strategy == "spine" else _deep_site
    moves = []
    cur = t
    while (pos := site(cur)) is not None:
        moves.append((pos, 1))
        cur = rotate(cur, pos, 1)
    return AssocPath(t, tuple(moves))


def canonical_path(t1, t2, strategy="spine"):
    return path_to_right_comb(t1, strategy).then(path_to_right_comb(t2, strategy).reverse())


def random_path(t1, t2, rng, steps=4):
    """A path ``t1 -> t2`` through random detours at both ends."""

    def walk(t):
        moves = []
        for _ in range(steps):
            opts = [(p, d) for p in _internal_positions(t) for d in (1, -1) if _can_rotate(t, p, d)]
            if not opts:
                break
            p, d = opts[int(rng.integers(len(opts)))]
            moves.append((p, d))
            t = rotate(t, p, d)
        return tuple(moves), t

    m1, a = walk(t1)
    m2, b = walk(t2)
    head = AssocPath(t1, m1)
    tail = AssocPath(t2, m2).reverse()
    return head.then(canonical_path(a, b)).then(tail)


def _internal_positions(t, pos=()):
    if isinstance(t, Leaf):
        return []
    return [pos] + _internal_positions(t.left, pos + (0,)) + _internal_positions(t.right, pos + (1,))


def _can_rotate(t, pos, d):
    s = subtree(t, pos)
    return isinstance(s.left if d == 1 else s.right, Node)


@lru_cache(maxsize=None)
def _shapes(n):
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for a in _shapes(k):
            for b in _shapes(n - k):
                out.append((a, b))
    return tuple(out)


def all_trees(n, names=None):
    """Every bracketing of ``n`` leaves (Catalan many), leftmost-split first."""
    names = names or [f"x{i + 1}" for i in range(n)]

    def build(shape, it):
        if shape is None:
            return Leaf(next(it))
        left = build(shape[0], it)
        return Node(left, build(shape[1], it))

    return [build(s, iter(names)) for s in _shapes(n)]


def left_comb(n, names=None):
    return all_trees(n, names)[-1]


def right_comb(n, names=None):
    return all_trees(n, names)[0]


# ---------------------------------------------------------------------------
# evaluation


def _assignment(t, cat, values):
    ls = leaves(t)
    if isinstance(values, dict):
        vals = [0 if leaf.is_unit else values[leaf.name] for leaf in ls]
    else:
        vals = list(values)
    if len(vals) != len(ls):
        raise ValidationError(f"expected {len(ls)} leaf values, got {len(vals)}")
    for v in vals:
        if not (0 <= int(v) < cat.G.order):
            raise LabelOutOfRange(f"object {v} not in G", witness=(v,))
    return [int(v) for v in vals]


def move_sites(path):
    """``(k, i, j, m, sign)`` per move; the site's three subtrees cover the
    leaves ``[k, i)``, ``[i, j)`` and ``[j, m)``."""
    out = []
    t = path.start
    for pos, d in path.moves:
        s = subtree(t, pos)
        k = leaf_offset(t, pos)
        if d == 1:
            nx, ny = size(s.left.left), size(s.left.right)
        else:
            nx, ny = size(s.left), size(s.right.left)
        out.append((k, k + nx, k + nx + ny, k + size(s), d))
        t = rotate(t, pos, d)
    return out


def evaluate_many(path, cat, values):
    """:func:`evaluate_path` on each row of an ``(m, n)`` array of leaf objects."""
    G, A = cat.G, cat.A
    V = np.asarray(values, dtype=np.int64).reshape(-1, size(path.start))
    if V.size and (V.min() < 0 or V.max() >= G.order):
        bad = int(V[(V < 0) | (V >= G.order)][0])
        raise LabelOutOfRange(f"object {bad} not in G", witness=(bad,))
    prefix = np.zeros((V.shape[0], V.shape[1] + 1), dtype=np.int64)
    for j in range(V.shape[1]):
        prefix[:, j + 1] = G.table[prefix[:, j], V[:, j]]
    inv = G.inverse

    def prod(i, j):
        return G.table[inv[prefix[:, i]], prefix[:, j]]

    q = G.order
    total = np.zeros(V.shape[0], dtype=np.int64)
    for k, i, j, m, d in move_sites(path):
        x, y, z = prod(k, i), prod(i, j), prod(j, m)
        term = cat.action.perms[prefix[:, k], cat.assoc.values[(x * q + y) * q + z]]
        if d == -1:
            term = A.group.inverse[term]
        total = A.table[total, term]
    return total


def evaluate_path(path, cat, values):
    """Component in ``A`` of the composite of the moves along ``path``.

    A move at a site with subtrees ``x, y, z`` contributes
    ``+- rho(u) a(x, y, z)``, where ``u`` is the product of the leaves left
    of the site.  ``values`` lists the leaf objects left to right or maps
    leaf names to objects.
    """
    vals = _assignment(path.start, cat, values)
    return int(evaluate_many(path, cat, [vals])[0])


# ---------------------------------------------------------------------------
# coherence sweeps


@dataclass
class Discrepancy:
    start: object
    end: object
    values: tuple
    paths: tuple
    results: tuple

    def line(self):
        return (
            f"FAIL {to_text(self.start)} -> {to_text(self.end)} at {list(self.values)}: "
            f"path values {list(self.results)}"
        )


@dataclass
class CoherenceReport:
    n: int
    pairs: int = 0
    assignments: int = 0
    evaluations: int = 0
    discrepancies: list = field(default_factory=list)
    pentagon: tuple = None

    def __bool__(self):
        return not self.discrepancies

    def lines(self):
        if not self.discrepancies:
            return [f"PASS n={self.n} pairs={self.pairs} assignments={self.assignments} evaluations={self.evaluations}"]
        out = [d.line() for d in self.discrepancies]
        if self.pentagon is not None:
            out.append(f"FAIL pentagon {list(self.pentagon)}")
        return out


def coherence_check(cat, n, rng=None, samples=16, alternates=2, exhaustive_limit=256, stop_after=1):
    """Compare several paths for every ordered pair of ``n``-leaf trees.

    For each pair the spine path, the deep path and ``alternates`` random
    detour paths are evaluated on leaf assignments: all of ``G^n`` when that
    has at most ``exhaustive_limit`` elements, otherwise ``samples`` random
    ones.  Stops after ``stop_after`` discrepancies; a failing report also
    names the first quadruple where the pentagon breaks.
    """
    if n < 1 or n > MAX_WORD:
        raise SizeBound(f"word length {n} outside 1..{MAX_WORD}")
    rng = rng if rng is not None else np.random.default_rng(0)
    q = cat.G.order
    if q ** n <= exhaustive_limit:
        assignments = list(itertools.product(range(q), repeat=n))
    else:
        assignments = [tuple(int(x) for x in rng.integers(q, size=n)) for _ in range(samples)]
    V = np.array(assignments, dtype=np.int64).reshape(len(assignments), n)
    trees = all_trees(n)
    report = CoherenceReport(n, pairs=len(trees) ** 2, assignments=len(assignments))
    for t1 in trees:
        for t2 in trees:
            paths = [canonical_path(t1, t2), canonical_path(t1, t2, "deep")]
            paths += [random_path(t1, t2, rng) for _ in range(alternates)]
            res = np.stack([evaluate_many(p, cat, V) for p in paths], axis=1)
            report.evaluations += res.size
            for r in np.flatnonzero((res != res[:, :1]).any(axis=1)):
                vals = tuple(int(x) for x in V[r])
                report.discrepancies.append(Discrepancy(t1, t2, vals, tuple(paths), tuple(map(int, res[r]))))
                if len(report.discrepancies) >= stop_after:
                    report.pentagon = is_cocycle(cat.assoc).witness
                    return report
    return report
