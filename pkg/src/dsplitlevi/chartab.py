"""Exact character tables of small finite groups.

A :class:`FiniteGroup` wraps an explicit list of group elements (any
hashable objects with ``*`` and ``.inv()``, e.g. signed permutations or
integer matrices).  :func:`character_table` computes its full ordinary
character table by the classical modular method: the class-sum matrices
are simultaneously diagonalised over a prime field F_l with l = 1 mod
exp(G) and l^2 > 4|G|, degrees are recovered from the second
orthogonality relation, and the character values are lifted to exact
cyclotomic numbers of conductor exp(G) via discrete Fourier inversion
over the power maps.  Row and column orthogonality are re-verified
exactly before a table is returned.

Induction, restriction and inner products of class functions are exact,
and :func:`inertia_and_extendibility` decides whether a character of a
normal subgroup extends to its stabiliser.
"""

import math
from fractions import Fraction

from sympy import factorint, isprime

from .cyclo import CycNum, zeta

DEFAULT_CAP = 10000


class CapExceeded(Exception):
    """A group enumeration grew past the configured size cap."""


# ---------------------------------------------------------------------------
# groups as explicit element lists
# ---------------------------------------------------------------------------

class ClassData:
    """Conjugacy classes: representatives, sizes, member lists, lookup."""

    __slots__ = ("reps", "sizes", "classes", "class_of")

    def __init__(self, reps, sizes, classes, class_of):
        self.reps = reps
        self.sizes = sizes
        self.classes = classes
        self.class_of = class_of


class FiniteGroup:
    """A finite group given by an explicit, deterministic element list.

    Elements must be hashable, support ``a * b`` and ``a.inv()``.  The
    element list must be closed under multiplication (verified).  The
    conjugacy class of each element is found by orbit search under
    conjugation by the stored generators; the representative of a class
    is its earliest member in element-list order, and the class of the
    identity is always listed first.
    """

    __slots__ = ("elements", "index", "identity", "generators", "order",
                 "_classes", "_exponent")

    def __init__(self, elements, generators=None, cap=DEFAULT_CAP):
        elements = list(elements)
        if not elements:
            raise ValueError("a group needs at least one element")
        if len(elements) > cap:
            raise CapExceeded(
                f"group of order {len(elements)} exceeds cap {cap}")
        index = {}
        for pos, x in enumerate(elements):
            if x in index:
                raise ValueError("duplicate element in group list")
            index[x] = pos
        ident = elements[0] * elements[0].inv()
        if ident not in index:
            raise ValueError("identity element missing from group list")
        for x in elements:
            if x.inv() not in index:
                raise ValueError("element list is not closed under inverse")
        self.elements = tuple(elements)
        self.index = index
        self.identity = ident
        self.order = len(elements)
        if generators is None:
            generators = self._reduce_generators()
        else:
            generators = tuple(g for g in generators if g != ident)
            if not generators:
                generators = (ident,)
        self.generators = tuple(generators)
        self._classes = None
        self._exponent = None

    @classmethod
    def generate(cls, gens, cap=DEFAULT_CAP):
        """The subgroup generated by ``gens``, enumerated by breadth-first
        search starting at the identity (a deterministic order)."""
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        ident = gens[0] * gens[0].inv()
        elements = [ident]
        seen = {ident}
        queue = [ident]
        while queue:
            nxt = []
            for x in queue:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        elements.append(y)
                        nxt.append(y)
                        if len(elements) > cap:
                            raise CapExceeded(
                                f"generated group exceeds cap {cap}")
            queue = nxt
        return cls(elements, generators=gens, cap=cap)

    def _reduce_generators(self):
        """A short generating sequence found greedily; doubles as a check
        that the element list really is closed under multiplication."""
        gens = []
        known = {self.identity}
        for x in self.elements:
            if x in known:
                continue
            gens.append(x)
            queue = [self.identity]
            known = {self.identity}
            while queue:
                nxt = []
                for y in queue:
                    for g in gens:
                        z = y * g
                        if z not in known:
                            if z not in self.index:
                                raise ValueError(
                                    "element list is not closed under "
                                    "multiplication")
                            known.add(z)
                            nxt.append(z)
                queue = nxt
            if len(known) == self.order:
                break
        if len(known) != self.order:
            raise ValueError("element list is not closed under multiplication")
        return tuple(gens) if gens else (self.identity,)

    def element_order(self, x):
        k = 1
        cur = x
        while cur != self.identity:
            cur = cur * x
            k += 1
        return k

    def exponent(self):
        if self._exponent is None:
            data = self.conjugacy_classes()
            self._exponent = math.lcm(
                *(self.element_order(r) for r in data.reps))
        return self._exponent

    def conjugacy_classes(self):
        if self._classes is not None:
            return self._classes
        seen = set()
        classes = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = [x]
            seen.add(x)
            queue = [x]
            while queue:
                nxt = []
                for y in queue:
                    for g in self.generators:
                        z = g.inv() * y * g
                        if z not in seen:
                            seen.add(z)
                            orbit.append(z)
                            nxt.append(z)
                queue = nxt
            classes.append(orbit)
        # The identity's class goes first; all others keep discovery order.
        j0 = next(j for j, orb in enumerate(classes) if orb[0] == self.identity)
        classes = [classes[j0]] + classes[:j0] + classes[j0 + 1:]
        reps = tuple(orb[0] for orb in classes)
        sizes = tuple(len(orb) for orb in classes)
        class_of = {}
        for j, orb in enumerate(classes):
            for y in orb:
                class_of[y] = j
        self._classes = ClassData(reps, sizes,
                                  tuple(tuple(orb) for orb in classes),
                                  class_of)
        return self._classes


# ---------------------------------------------------------------------------
# class functions
# ---------------------------------------------------------------------------

def _common_conductor(a, b):
    d = math.lcm(a.d, b.d)
    return a.promote(d), b.promote(d)


class ClassFunction:
    """A class function on a :class:`FiniteGroup`, one exact cyclotomic
    value per conjugacy class (in the group's class order)."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        values = tuple(values)
        if len(values) != len(group.conjugacy_classes().reps):
            raise ValueError("one value per conjugacy class required")
        self.group = group
        self.values = values

    @property
    def degree(self):
        return self.values[0]

    def value_at(self, element):
        data = self.group.conjugacy_classes()
        return self.values[data.class_of[element]]

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.group.conjugacy_classes().reps != \
                other.group.conjugacy_classes().reps:
            return False
        for a, b in zip(self.values, other.values):
            pa, pb = _common_conductor(a, b)
            if pa != pb:
                return False
        return True

    def __hash__(self):
        return hash(self.group.conjugacy_classes().reps)

    def __repr__(self):
        return f"ClassFunction({list(self.values)!r})"


# ---------------------------------------------------------------------------
# linear algebra over F_l
# ---------------------------------------------------------------------------

def _rref(rows, l):
    """Reduced row echelon form mod l; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], l - 2, l)
        rows[rank] = [(v * inv) % l for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % l
                           for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in rows[:rank]], pivots


def _coords_in_basis(basis, pivots, vec, l):
    """Coordinates of ``vec`` in an RREF ``basis``; vec must lie in it."""
    vec = list(vec)
    coords = []
    for row, p in zip(basis, pivots):
        c = vec[p] % l
        coords.append(c)
        if c:
            vec = [(a - c * b) % l for a, b in zip(vec, row)]
    if any(v % l for v in vec):
        raise AssertionError("vector not in subspace (class matrices "
                             "should commute)")
    return coords


def _kernel(mat, l):
    """Basis (RREF rows) of the right kernel of a square matrix mod l."""
    n = len(mat)
    rows, pivots = _rref(mat, l)
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        v = [0] * n
        v[free] = 1
        for row, p in zip(rows, pivots):
            v[p] = (-row[free]) % l
        basis.append(tuple(v))
    reduced, _ = _rref(basis, l) if basis else ([], [])
    return reduced


def _matvec(mat, vec, l):
    return tuple(sum(a * b for a, b in zip(row, vec)) % l for row in mat)


def _poly_trim(p, l):
    p = [c % l for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b, l):
    a = _poly_trim(a, l)
    b = _poly_trim(b, l)
    inv = pow(b[-1], l - 2, l)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        f = (a[-1] * inv) % l
        shift = len(a) - len(b)
        q[shift] = f
        a = [(c - f * d) % l for c, d in
             zip(a, [0] * shift + b)] if shift else \
            [(c - f * d) % l for c, d in zip(a, b)]
        a = _poly_trim(a, l)
        if not a:
            break
    return q, a


def _poly_gcd(a, b, l):
    a = _poly_trim(a, l)
    b = _poly_trim(b, l)
    while b:
        _, r = _poly_divmod(a, b, l)
        a, b = b, r
    inv = pow(a[-1], l - 2, l)
    return [(c * inv) % l for c in a]


def _poly_mul(a, b, l):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % l
    return out


def _poly_lcm(a, b, l):
    g = _poly_gcd(a, b, l)
    q, r = _poly_divmod(_poly_mul(a, b, l), g, l)
    assert not r
    return q


def _minpoly_of_vector(mat, v, l):
    """Monic minimal polynomial of ``mat`` at the vector ``v`` (Krylov)."""
    basis = []          # echelon rows
    combos = []         # same combination expressed over powers of mat
    cur = tuple(c % l for c in v)
    power = 0
    while True:
        vec = list(cur)
        combo = [0] * (power + 1)
        combo[power] = 1
        for row, rcombo in zip(basis, combos):
            p = next((i for i, c in enumerate(row) if c), None)
            if p is not None and vec[p]:
                f = (vec[p] * pow(row[p], l - 2, l)) % l
                vec = [(a - f * b) % l for a, b in zip(vec, row)]
                for i, c in enumerate(rcombo):
                    combo[i] = (combo[i] - f * c) % l
        if not any(vec):
            inv = pow(combo[-1], l - 2, l)
            return [(c * inv) % l for c in combo]
        basis.append(tuple(vec))
        combos.append(combo)
        cur = _matvec(mat, cur, l)
        power += 1


def _eigenvalues(mat, l):
    """All eigenvalues in F_l of a diagonalisable square matrix."""
    n = len(mat)
    minpoly = [1]
    for i in range(n):
        v = [0] * n
        v[i] = 1
        minpoly = _poly_lcm(minpoly, _minpoly_of_vector(mat, v, l), l)
        if len(minpoly) == n + 1:
            break
    return [x for x in range(l)
            if sum(c * pow(x, k, l) for k, c in enumerate(minpoly)) % l == 0]


# ---------------------------------------------------------------------------
# the modular character-table algorithm
# ---------------------------------------------------------------------------

def _dixon_prime(order, exponent):
    t = 1
    while True:
        l = exponent * t + 1
        if l * l > 4 * order and order % l and isprime(l):
            return l
        t += 1


def _root_of_unity(l, e):
    """An element of multiplicative order exactly e in F_l (l = 1 mod e)."""
    fac = factorint(l - 1)
    g = 2
    while any(pow(g, (l - 1) // p, l) == 1 for p in fac):
        g += 1
    return pow(g, (l - 1) // e, l)


def _class_matrix(G, data, j, l):
    """M_j with (M_j)[i][k] = #{(x, y) in C_j x C_i : x*y = rep_k} mod l."""
    r = len(data.reps)
    mat = [[0] * r for _ in range(r)]
    for x in data.classes[j]:
        xi = x.inv()
        for k, rep in enumerate(data.reps):
            i = data.class_of[xi * rep]
            mat[i][k] += 1
    return [[v % l for v in row] for row in mat]


def _split_eigenvectors(G, data, l):
    """Common eigenvector lines of all class matrices, normalised so the
    identity-class coordinate is 1.  Row t is the vector of values
    |C_j| * chi_t(g_j) / chi_t(1) mod l."""
    r = len(data.reps)
    spaces = [([tuple(1 if i == j else 0 for j in range(r))
                for i in range(r)], list(range(r)))]
    for j in range(1, r):
        if all(len(basis) == 1 for basis, _ in spaces):
            break
        mat = _class_matrix(G, data, j, l)
        new_spaces = []
        for basis, pivots in spaces:
            k = len(basis)
            if k == 1:
                new_spaces.append((basis, pivots))
                continue
            # Action on coordinates: images of basis rows, re-expressed.
            action = [_coords_in_basis(basis, pivots,
                                       _matvec(mat, b, l), l)
                      for b in basis]
            # Coordinate rows transform by right multiplication, so we
            # need left eigenvectors of `action`, i.e. kernels of the
            # transpose shifted by each eigenvalue.
            trans = [[action[i][s] for i in range(k)] for s in range(k)]
            found = 0
            for lam in _eigenvalues(trans, l):
                shifted = [[(v - (lam if i == s else 0)) % l
                            for i, v in enumerate(row)]
                           for s, row in enumerate(trans)]
                vecs = []
                for gamma in _kernel(shifted, l):
                    vec = [0] * r
                    for c, b in zip(gamma, basis):
                        if c:
                            vec = [(a + c * bb) % l for a, bb in zip(vec, b)]
                    vecs.append(vec)
                if vecs:
                    new_basis, new_pivots = _rref(vecs, l)
                    new_spaces.append((new_basis, new_pivots))
                    found += len(new_basis)
            if found != k:
                raise AssertionError("class matrix failed to diagonalise")
        # Regroup: distinct lines stay separate; nothing to merge because
        # eigenspace splitting only refines.
        spaces = new_spaces
    lines = []
    for basis, _ in spaces:
        if len(basis) != 1:
            raise AssertionError("class matrices did not separate characters")
        u = basis[0]
        if u[0] % l == 0:
            raise AssertionError("eigenvector vanishes on the identity class")
        inv = pow(u[0], l - 2, l)
        lines.append(tuple((c * inv) % l for c in u))
    return lines


class CharacterTable:
    """The exact ordinary character table of a finite group.

    ``values[t][j]`` is the value of the t-th irreducible character at
    the j-th conjugacy class representative, as a cyclotomic number of
    conductor ``exponent``.  Rows are sorted by (degree, coefficient
    key), which makes the table deterministic.
    """

    __slots__ = ("group", "exponent", "prime", "degrees", "values",
                 "_characters")

    def __init__(self, group, exponent, prime, degrees, values):
        self.group = group
        self.exponent = exponent
        self.prime = prime
        self.degrees = degrees
        self.values = values
        self._characters = None

    @property
    def characters(self):
        if self._characters is None:
            self._characters = [ClassFunction(self.group, row)
                                for row in self.values]
        return self._characters

    def conjugate(self, value):
        return value.conjugate()

    def __repr__(self):
        return (f"CharacterTable(order={self.group.order}, "
                f"degrees={list(self.degrees)})")


def _value_key(row):
    return tuple(tuple((c.numerator, c.denominator) for c in v.coeffs)
                 for v in row)


_TABLE_CACHE = {}


def character_table(G, cap=DEFAULT_CAP):
    """The exact character table of ``G`` (see :class:`CharacterTable`)."""
    if G.order > cap:
        raise CapExceeded(f"group of order {G.order} exceeds cap {cap}")
    cache_key = G.elements
    cached = _TABLE_CACHE.get(cache_key)
    if cached is not None:
        return cached

    data = G.conjugacy_classes()
    r = len(data.reps)
    e = G.exponent()
    l = _dixon_prime(G.order, e)
    z = _root_of_unity(l, e)
    zinv = pow(z, l - 2, l)

    omegas = _split_eigenvectors(G, data, l)
    if len(omegas) != r:
        raise AssertionError("wrong number of eigenvector lines")

    inv_class = [data.class_of[rep.inv()] for rep in data.reps]
    size_inv = [pow(s, l - 2, l) for s in data.sizes]
    max_degree = math.isqrt(G.order)

    degrees = []
    for om in omegas:
        s = sum(om[j] * om[inv_class[j]] * size_inv[j] for j in range(r)) % l
        target = (G.order * pow(s, l - 2, l)) % l
        d = next((d for d in range(1, max_degree + 1)
                  if (d * d) % l == target), None)
        if d is None:
            raise AssertionError("no degree matches the orthogonality sum")
        degrees.append(d)
    if sum(d * d for d in degrees) != G.order:
        raise AssertionError("degree squares do not sum to the group order")

    # Power maps: class of rep_j^s for every s mod e.
    power_class = []
    for rep in data.reps:
        row = []
        cur = G.identity
        for _ in range(e):
            row.append(data.class_of[cur])
            cur = cur * rep
        power_class.append(row)

    # Character values mod l, then Fourier inversion over the power map
    # lifts each value to a non-negative integer combination of e-th
    # roots of unity (the root multiplicities are at most the degree,
    # hence unambiguous below l).
    e_inv = pow(e, l - 2, l)
    zetas = [zeta(e, k) for k in range(e)]
    rows = []
    for om, d in zip(omegas, degrees):
        modvals = [(d * om[j] * size_inv[j]) % l for j in range(r)]
        row = []
        for j in range(r):
            val = CycNum.zero(e)
            zk = 1  # z^{-k*s} accumulator, stepped by zinv^s per k
            for k in range(e):
                acc = 0
                zs = 1
                for s in range(e):
                    acc += modvals[power_class[j][s]] * zs
                    zs = (zs * zk) % l
                m = (acc * e_inv) % l
                if m:
                    if m > max_degree:
                        raise AssertionError(
                            "root-of-unity multiplicity fails lift bound")
                    val = val + zetas[k] * m
                zk = (zk * zinv) % l
            row.append(val)
        if row[0] != d:
            raise AssertionError("lifted degree disagrees with modular degree")
        rows.append(row)

    order_rows = sorted(range(r), key=lambda t: (degrees[t],
                                                 _value_key(rows[t])))
    degrees = tuple(degrees[t] for t in order_rows)
    values = tuple(tuple(rows[t]) for t in order_rows)

    _verify_orthogonality(G, data, values)
    if any(G.order % d for d in degrees):
        raise AssertionError("some degree does not divide the group order")

    table = CharacterTable(G, e, l, degrees, values)
    _TABLE_CACHE[cache_key] = table
    return table


def _verify_orthogonality(G, data, values):
    r = len(data.reps)
    e = values[0][0].d
    zero = CycNum.zero(e)
    conj_rows = [tuple(v.conjugate() for v in row) for row in values]
    for t1, row in enumerate(values):
        for t2 in range(t1, r):
            total = zero
            for j in range(r):
                total = total + row[j] * conj_rows[t2][j] * data.sizes[j]
            want = G.order if t1 == t2 else 0
            if total != want:
                raise AssertionError("row orthogonality fails")
    for j in range(r):
        for k in range(j, r):
            total = zero
            for t in range(r):
                total = total + values[t][j] * conj_rows[t][k]
            want = G.order // data.sizes[j] if j == k else 0
            if total != want:
                raise AssertionError("column orthogonality fails")


# ---------------------------------------------------------------------------
# induction, restriction, inner products
# ---------------------------------------------------------------------------

def restrict(chi, H):
    """The restriction of a class function to a subgroup ``H``."""
    G = chi.group
    gdata = G.conjugacy_classes()
    hdata = H.conjugacy_classes()
    for rep in hdata.reps:
        if rep not in G.index:
            raise ValueError("H is not a subgroup of the domain of chi")
    return ClassFunction(H, tuple(chi.values[gdata.class_of[rep]]
                                  for rep in hdata.reps))


def induce(theta, G):
    """The induced class function Ind_H^G(theta), where H = theta.group."""
    H = theta.group
    for x in H.elements:
        if x not in G.index:
            raise ValueError("the domain of theta is not a subgroup of G")
    hdata = H.conjugacy_classes()
    value_at = {}
    for j, orb in enumerate(hdata.classes):
        for y in orb:
            value_at[y] = theta.values[j]
    gdata = G.conjugacy_classes()
    d = theta.values[0].d
    out = []
    for rep in gdata.reps:
        total = CycNum.zero(d)
        for x in G.elements:
            y = x * rep * x.inv()
            v = value_at.get(y)
            if v is not None:
                total = total + v
        out.append(total / H.order)
    return ClassFunction(G, tuple(out))


def inner(phi, psi):
    """The exact inner product <phi, psi> of two class functions on the
    same group; returns a Fraction (an integer for characters)."""
    if phi.group.elements != psi.group.elements:
        raise ValueError("class functions live on different groups")
    data = phi.group.conjugacy_classes()
    D = math.lcm(*(v.d for v in phi.values), *(v.d for v in psi.values))
    total = CycNum.zero(D)
    for j, size in enumerate(data.sizes):
        total = total + (phi.values[j].promote(D)
                         * psi.values[j].conjugate().promote(D) * size)
    value = total / phi.group.order
    if not value.is_rational():
        raise ArithmeticError("inner product of class functions must be "
                              "rational")
    return value.coeffs[0]


# ---------------------------------------------------------------------------
# inertia groups and extendibility
# ---------------------------------------------------------------------------

def inertia_and_extendibility(H, N, theta, cap=DEFAULT_CAP):
    """For a normal subgroup N of H and a class function theta on N:
    the inertia group H_theta = {h : theta^h = theta}, whether theta
    extends to H_theta, and a witness extension (or None).

    ``theta^h(n) = theta(h n h^{-1})``; extendibility is decided by an
    exhaustive search through Irr(H_theta) for a character whose
    restriction to N equals theta exactly.
    """
    if theta.group.elements != N.elements:
        raise ValueError("theta must be a class function on N")
    for x in N.elements:
        if x not in H.index:
            raise ValueError("N is not a subgroup of H")
    for g in H.generators:
        gi = g.inv()
        for x in N.elements:
            if g * x * gi not in N.index:
                raise ValueError("N is not normal in H")

    ndata = N.conjugacy_classes()
    value_at = {}
    for j, orb in enumerate(ndata.classes):
        for y in orb:
            value_at[y] = theta.values[j]

    stab = []
    for h in H.elements:
        hi = h.inv()
        if all(value_at[h * rep * hi] == theta.values[j]
               for j, rep in enumerate(ndata.reps)):
            stab.append(h)
    H_theta = FiniteGroup(stab, cap=cap)

    table = character_table(H_theta, cap=cap)
    for chi in table.characters:
        if restrict(chi, N) == theta:
            return H_theta, True, chi
    return H_theta, False, None
