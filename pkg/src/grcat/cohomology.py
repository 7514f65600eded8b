"""Group cohomology H^n(G, A) for n <= 3 with a left action of G on A.

Cochains are tables ``G^n -> A`` indexed lexicographically.  The coboundary
is the bar-resolution alternating sum

    (df)(g1..g_{n+1}) = g1.f(g2..g_{n+1})
                        + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                        + (-1)^{n+1} f(g1..g_n)

Class computations run on normalized cochains in cyclic coordinates of A and
reduce to Smith normal form over the integers with the moduli appended as
relations.  Small cases can also be decided by exhaustive enumeration, which
is kept as an independent route.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegreeUnsupported,
    MismatchedAmbient,
    NotIsomorphism,
    NotNormalized,
    SizeBound,
    ValidationError,
)
from .fingroup import GAction, cyclic_decomposition, invariant_factors_of_order
from .linalg import identity, smith_normal_form, solve

MAX_DEGREE = 3
LINALG_BOUND = 4000
EXHAUSTIVE_BOUND = 100_000


def _all_tuples(q, n):
    """All n-tuples over ``range(q)`` as an array, lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def _tuple_index(tuples, q):
    idx = np.zeros(tuples.shape[0], dtype=np.int64)
    for j in range(tuples.shape[1]):
        idx = idx * q + tuples[:, j]
    return idx


class Cochain:
    """A map ``G^n -> A`` stored as a flat table of module elements."""

    def __init__(self, action, degree, values):
        if degree < 0:
            raise ValidationError("degree must be non-negative")
        values = np.asarray(values, dtype=np.int64).reshape(-1)
        q = action.group.order
        if values.shape[0] != q ** degree:
            raise ValidationError(f"expected {q ** degree} values, got {values.shape[0]}")
        if np.any((values < 0) | (values >= action.module.order)):
            raise ValidationError("cochain value outside the module")
        self.action = action
        self.degree = degree
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def zero(cls, action, degree):
        return cls(action, degree, np.zeros(action.group.order ** degree, dtype=np.int64))

    @classmethod
    def from_function(cls, action, degree, fn):
        tuples = _all_tuples(action.group.order, degree)
        return cls(action, degree, [fn(*map(int, t)) for t in tuples])

    @property
    def group(self):
        return self.action.group

    @property
    def module(self):
        return self.action.module

    def __call__(self, *args):
        if len(args) != self.degree:
            raise ValidationError(f"expected {self.degree} arguments")
        idx = 0
        for g in args:
            idx = idx * self.group.order + g
        return int(self.values[idx])

    def items(self):
        for t, v in zip(_all_tuples(self.group.order, self.degree), self.values):
            yield tuple(map(int, t)), int(v)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, values={self.values.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.action == other.action
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.degree, self.values.tobytes()))

    def _check(self, other):
        if self.degree != other.degree or self.action != other.action:
            raise MismatchedAmbient("cochains live over different (G, A, rho) or degrees")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.action, self.degree, self.module.table[self.values, other.values])

    def __neg__(self):
        return Cochain(self.action, self.degree, self.module.group.inverse[self.values])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        inv = self.module.group
        out = np.array([inv.power(int(v), k) for v in self.values], dtype=np.int64)
        return Cochain(self.action, self.degree, out)

    @property
    def is_zero(self):
        return not np.any(self.values)

    @property
    def is_normalized(self):
        """Value 0 whenever some argument is the identity."""
        tuples = _all_tuples(self.group.order, self.degree)
        has_id = np.any(tuples == 0, axis=1)
        return not np.any(self.values[has_id])


# ---------------------------------------------------------------------------
# coboundary


def _coboundary_values(action, n, V):
    """Coboundary of a batch of degree-n value tables; ``V`` has shape (..., q^n)."""
    q = action.group.order
    Gt = action.group.table
    At = action.module.table
    Ainv = action.module.group.inverse
    T = _all_tuples(q, n + 1)
    # term 0: g1 . f(g2..)
    idx0 = _tuple_index(T[:, 1:], q)
    acc = action.perms[T[:, 0], V[..., idx0]]
    for i in range(1, n + 2):
        if i <= n:
            merged = np.concatenate(
                [T[:, : i - 1], Gt[T[:, i - 1], T[:, i]][:, None], T[:, i + 1:]], axis=1
            )
        else:
            merged = T[:, :n]
        term = V[..., _tuple_index(merged, q)]
        acc = At[acc, term] if i % 2 == 0 else At[acc, Ainv[term]]
    return acc


def coboundary(c):
    """The coboundary ``dc`` (degree n+1) of a cochain of degree n <= 3."""
    if c.degree > MAX_DEGREE:
        raise DegreeUnsupported(f"degree {c.degree} exceeds {MAX_DEGREE}")
    return Cochain(c.action, c.degree + 1, _coboundary_values(c.action, c.degree, c.values))


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    witness: tuple = None

    def __bool__(self):
        return self.ok


def is_cocycle(c):
    """True iff ``dc = 0``; otherwise carries the first violating tuple."""
    d = coboundary(c)
    bad = np.flatnonzero(d.values)
    if len(bad) == 0:
        return CocycleCheck(True)
    t = _all_tuples(c.group.order, c.degree + 1)[bad[0]]
    return CocycleCheck(False, tuple(int(x) for x in t))


# ---------------------------------------------------------------------------
# cyclic coordinates


def _nondeg_tuples(q, n):
    if n == 0:
        return [()]
    return list(itertools.product(range(1, q), repeat=n))


def _cell_tuples(q, n, normalized):
    return _nondeg_tuples(q, n) if normalized else list(itertools.product(range(q), repeat=n))


def _module_moduli(action, count):
    return np.array(list(action.module.moduli) * count, dtype=object)


def coboundary_matrix(action, n, normalized=True):
    """Integer matrix of ``d: C^n -> C^{n+1}`` in cyclic coordinates.

    Columns are indexed by (n-tuple, coordinate) and rows by ((n+1)-tuple,
    coordinate).  With ``normalized`` only identity-free tuples are kept.
    """
    G = action.group
    k = action.module.rank
    cols = _cell_tuples(G.order, n, normalized)
    rows = _cell_tuples(G.order, n + 1, normalized)
    pos = {t: i for i, t in enumerate(cols)}
    M = np.zeros((len(rows) * k, len(cols) * k), dtype=object)
    if k == 0:
        return M
    eye = np.eye(k, dtype=np.int64)
    for r, t in enumerate(rows):
        terms = [(t[1:], action.matrices[t[0]])]
        for i in range(1, n + 1):
            merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
            terms.append((merged, (-1) ** i * eye))
        terms.append((t[:n], (-1) ** (n + 1) * eye))
        for arg, block in terms:
            c = pos.get(arg)
            if c is None:
                continue
            M[r * k:(r + 1) * k, c * k:(c + 1) * k] += block.astype(object)
    return M


def to_vector(c, normalized=True):
    """Cyclic coordinates of a cochain (identity-free tuples only if normalized)."""
    A = c.module
    q = c.group.order
    out = []
    for t in _cell_tuples(q, c.degree, normalized):
        out.extend(A.to_coords(c(*t)))
    return np.array(out, dtype=object)


def from_vector(action, n, v, normalized=True):
    A = action.module
    q = action.group.order
    k = A.rank
    vals = np.zeros(q ** n, dtype=np.int64)
    for i, t in enumerate(_cell_tuples(q, n, normalized)):
        idx = 0
        for g in t:
            idx = idx * q + g
        vals[idx] = A.from_coords([int(x) for x in v[i * k:(i + 1) * k]])
    return Cochain(action, n, vals)


def _check_size(action, n, bound):
    size = action.group.order ** (n + 1) * action.module.rank
    if size > bound:
        raise SizeBound(f"coboundary matrix size {size} exceeds bound {bound}")


def _solve_mod(M, moduli, b):
    """Integer ``x`` with ``M x = b`` modulo the row moduli, or None."""
    rows, cols = M.shape
    aug = np.concatenate([M, np.diag(moduli) if rows else np.zeros((0, 0), dtype=object)], axis=1)
    if rows == 0:
        return np.zeros(cols, dtype=object)
    sol = solve(aug, b)
    if sol is None:
        return None
    return sol[:cols]


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass
class CohomologyGroupReport:
    """``H^n(G, A)`` as invariant factors with one representative per factor."""

    degree: int
    action: GAction
    invariants: tuple
    representatives: list
    method: str = "snf"
    _to_class: object = field(default=None, repr=False)

    @property
    def order(self):
        r = 1
        for m in self.invariants:
            r *= m
        return r

    @property
    def is_trivial(self):
        return self.order == 1

    def describe(self):
        if not self.invariants:
            return "0"
        return " x ".join(f"Z/{m}" for m in self.invariants)

    def coordinates(self, c):
        """Coordinates of the class of a normalized cocycle in the invariant factors."""
        if self._to_class is None:
            raise ValidationError("class coordinates need the Smith normal form route")
        if c.action != self.action or c.degree != self.degree:
            raise MismatchedAmbient("cocycle lives over a different ambient")
        if not c.is_normalized:
            raise NotNormalized("class coordinates need a normalized cocycle")
        return self._to_class(to_vector(c))


def cohomology_group(action, n, method="snf", bound=LINALG_BOUND):
    """Compute ``H^n(G, A)`` for ``n <= 3``.

    ``method="snf"`` uses integer linear algebra on normalized cochains;
    ``method="exhaustive"`` enumerates every (unnormalized) cochain and is only
    feasible for tiny instances.
    """
    if n > MAX_DEGREE or n < 0:
        raise DegreeUnsupported(f"degree {n} not in 0..{MAX_DEGREE}")
    if method == "exhaustive":
        return _cohomology_exhaustive(action, n)
    if method != "snf":
        raise ValueError(f"unknown method {method!r}")
    _check_size(action, n, bound)
    q = action.group.order
    N = len(_nondeg_tuples(q, n)) * action.module.rank
    if N == 0:
        return CohomologyGroupReport(n, action, (), [], "snf", lambda x: ())
    dn = coboundary_matrix(action, n)
    mod_next = _module_moduli(action, len(_nondeg_tuples(q, n + 1)))
    mod_here = _module_moduli(action, len(_nondeg_tuples(q, n)))
    # cocycle lattice K = {x : d x in moduli lattice}
    if dn.shape[0]:
        aug = np.concatenate([dn, np.diag(mod_next)], axis=1)
        snf = smith_normal_form(aug, transforms="V")
        S = snf.V[:N, snf.rank:]
    else:
        S = identity(N)
    ks = smith_normal_form(S, transforms="U Uinv")
    d = ks.diagonal
    assert len(d) == N, "cocycle lattice must have full rank"
    P = ks.Uinv[:, :N] * np.array(d, dtype=object)[None, :]
    Pinv_num = ks.U[:N, :]
    # coboundary lattice B = im d_{n-1} + moduli lattice, written in K-coordinates
    gens = [np.diag(mod_here)]
    if n > 0:
        gens.insert(0, coboundary_matrix(action, n - 1))
    Bg = np.concatenate(gens, axis=1)
    C = Pinv_num.dot(Bg)
    for i, di in enumerate(d):
        assert all(x % di == 0 for x in C[i]), "coboundaries must lie in the cocycle lattice"
        C[i] = C[i] // di
    bs = smith_normal_form(C, transforms="U Uinv")
    factors = [int(bs.D[i, i]) for i in range(N)]
    keep = [i for i, f in enumerate(factors) if f > 1]
    reps = []
    for i in keep:
        v = P.dot(bs.Uinv[:, i])
        v = np.array([x % m for x, m in zip(v, mod_here)], dtype=object)
        reps.append(from_vector(action, n, v))
    to_class = _ClassMap(bs.U[keep, :], Pinv_num, d, [factors[i] for i in keep])
    return CohomologyGroupReport(n, action, tuple(factors[i] for i in keep), reps, "snf", to_class)


class _ClassMap:
    """x in the cocycle lattice  ->  U_B . P^{-1} x  reduced by the factors."""

    def __init__(self, UB, Pinv_num, d, factors):
        self.UB = UB
        self.Pinv_num = Pinv_num
        self.d = d
        self.factors = factors

    def __call__(self, x):
        c = self.Pinv_num.dot(x)
        for i, di in enumerate(self.d):
            if c[i] % di != 0:
                raise ValidationError("vector is not a cocycle")
            c[i] = c[i] // di
        return tuple(int(v) % m for v, m in zip(self.UB.dot(c), self.factors))


def _enumerate_values(action, n, bound=EXHAUSTIVE_BOUND):
    """Every degree-n value table, lexicographic, as one (count, q^n) array."""
    q = action.group.order
    a = action.module.order
    count = a ** (q ** n)
    if count > bound:
        raise SizeBound(f"{count} cochains of degree {n} exceed the enumeration bound {bound}")
    return _all_tuples(a, q ** n)


def _cohomology_exhaustive(action, n):
    A = action.module
    Z = _enumerate_values(action, n)
    dZ = _coboundary_values(action, n, Z)
    cocycles = Z[~np.any(dZ != 0, axis=1)]
    if n == 0:
        boundaries = {tuple([0])}
    else:
        F = _enumerate_values(action, n - 1)
        boundaries = {tuple(row) for row in _coboundary_values(action, n - 1, F).tolist()}
    nb = len(boundaries)
    # order census of the quotient group Z/B: each coset appears nb times
    census = Counter()
    for z in cocycles.tolist():
        k, acc = 1, list(z)
        while tuple(acc) not in boundaries:
            acc = [int(A.table[x, y]) for x, y in zip(acc, z)]
            k += 1
        census[k] += 1
    census = Counter({o: c // nb for o, c in census.items()})
    invariants = tuple(m for m in invariant_factors_of_order(census) if m > 1)
    return CohomologyGroupReport(n, action, invariants, [], "exhaustive")


# ---------------------------------------------------------------------------
# classes


@dataclass(frozen=True)
class ClassEquality:
    equal: bool
    witness: Cochain = None

    def __bool__(self):
        return self.equal


def _require_same(a, a2):
    if a.action != a2.action or a.degree != a2.degree:
        raise MismatchedAmbient("cocycles live over different (G, A, rho) or degrees")
    if a.degree < 1:
        raise DegreeUnsupported("class equality needs degree >= 1")


def class_equal(a, a2, method="snf"):
    """Decide whether ``a2 - a`` is a coboundary; the witness ``f`` has ``df = a2 - a``.

    ``method="snf"`` solves the integer system on normalized cochains (both
    inputs must be normalized); ``method="exhaustive"`` tries every
    unnormalized ``f`` in lexicographic order.
    """
    _require_same(a, a2)
    diff = a2 - a
    n = a.degree
    action = a.action
    if method == "exhaustive":
        F = _enumerate_values(action, n - 1)
        dF = _coboundary_values(action, n - 1, F)
        hits = np.flatnonzero(np.all(dF == diff.values[None, :], axis=1))
        if len(hits) == 0:
            return ClassEquality(False)
        return ClassEquality(True, Cochain(action, n - 1, F[hits[0]]))
    if method != "snf":
        raise ValueError(f"unknown method {method!r}")
    if not (a.is_normalized and a2.is_normalized):
        raise NotNormalized("class arithmetic needs normalized cochains")
    if diff.is_zero:
        return ClassEquality(True, Cochain.zero(action, n - 1))
    q = action.group.order
    M = coboundary_matrix(action, n - 1)
    mods = _module_moduli(action, len(_nondeg_tuples(q, n)))
    x = _solve_mod(M, mods, to_vector(diff))
    if x is None:
        return ClassEquality(False)
    f = from_vector(action, n - 1, np.array([v % m for v, m in zip(x, _module_moduli(action, len(_nondeg_tuples(q, n - 1))))], dtype=object))
    assert coboundary(f) == diff
    return ClassEquality(True, f)


def normalize_cocycle(a):
    """A normalized cocycle cohomologous to ``a``.

    Returns ``(a', f)`` with ``a' = a - df``.  Solved as an integer system on
    the values of ``a`` at tuples containing the identity.
    """
    n = a.degree
    action = a.action
    if a.is_normalized:
        return a, Cochain.zero(action, n - 1)
    if n < 1:
        raise DegreeUnsupported("normalization needs degree >= 1")
    q = action.group.order
    k = action.module.rank
    rows = _cell_tuples(q, n, False)
    M = coboundary_matrix(action, n - 1, normalized=False)
    keep = [r * k + j for r, t in enumerate(rows) if 0 in t for j in range(k)]
    v = to_vector(a, normalized=False)
    mods = _module_moduli(action, len(rows))
    x = _solve_mod(M[keep, :], mods[keep], v[keep])
    if x is None:
        raise NotNormalized("cochain cannot be normalized (is it a cocycle?)")
    fmods = _module_moduli(action, q ** (n - 1))
    f = from_vector(action, n - 1, np.array([u % m for u, m in zip(x, fmods)], dtype=object), normalized=False)
    out = a - coboundary(f)
    assert out.is_normalized
    return out, f


@dataclass(frozen=True)
class CohomologyClass:
    """The class of a normalized 3-cocycle; ``is_zero`` is decided by :func:`class_equal`."""

    representative: Cochain
    is_zero: bool

    @property
    def action(self):
        return self.representative.action

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return bool(class_equal(self.representative, other.representative))

    def __hash__(self):
        return hash(self.representative.degree)


def cohomology_class(a):
    return CohomologyClass(a, bool(class_equal(Cochain.zero(a.action, a.degree), a)))


def transport_action(action, phi, psi, module=None):
    """The action ``phi(g) . psi(x) = psi(g . x)`` on the target of ``psi``."""
    for h, name in ((phi, "phi"), (psi, "psi")):
        if not h.is_bijective:
            raise NotIsomorphism(f"{name} is not an isomorphism")
    module = cyclic_decomposition(module if module is not None else psi.target)
    q, m = phi.target.order, psi.target.order
    perms = np.empty((q, m), dtype=np.int64)
    for g in action.group:
        for x in action.module:
            perms[phi(g), psi(x)] = psi(action(g, x))
    return GAction(phi.target, module, perms)


def transport_class(a, phi, psi, action=None):
    """Pushforward ``a'(g'..) = psi(a(phi^-1 g'..))`` along isomorphisms.

    ``action`` is the target action; when omitted it is transported too.
    """
    for h, name in ((phi, "phi"), (psi, "psi")):
        if not h.is_bijective:
            raise NotIsomorphism(f"{name} is not an isomorphism")
    if phi.source != a.group or psi.source != a.module.group:
        raise MismatchedAmbient("isomorphisms do not start at the cochain's groups")
    if action is None:
        action = transport_action(a.action, phi, psi)
    elif action.group != phi.target or action.module.group != psi.target:
        raise MismatchedAmbient("target action does not match the isomorphisms")
    n = a.degree
    q = phi.target.order
    pinv = phi.inverse().images
    T = _all_tuples(q, n)
    src = _tuple_index(pinv[T], q) if n else np.zeros(1, dtype=np.int64)
    return Cochain(action, n, psi.images[a.values[src]])
