"""Integer-matrix realization of the extended Weyl group of Sp(2n).

Chevalley root elements x_alpha(t), the monomial lifts n_alpha(t) and
the diagonal h_alpha(t) are realised as 2n x 2n integer matrices in the
symplectic basis e_1..e_n, f_1..f_n with <e_i, f_i> = 1.  Only t = +-1
is ever needed, so every constructed element has entries in {0, +-1}.

rho projects a signed monomial matrix onto the signed permutation of
its pattern (f_i read as e_{-i}); its kernel is the diagonal 2-group.

build_twist_elements constructs the distinguished lift v of the Sylow
twist together with the grid-set elements c_i (lifting the long signed
cycles), p_k (lifting the grid-set swaps) and their derived chain
conjugates; build_VdI replicates them across the block orbits of a
Levi label, producing matrix generators that project exactly onto the
relative Weyl group computed by :mod:`dsplitlevi.levi`.
"""

from __future__ import annotations

from collections import namedtuple

from .levi import compute_d0, sylow_twist_w, tau_Q, wprime_Q
from .signedperm import SignedPerm, grid_set, tau, wprime


class IntMatrix:
    """Hashable square integer matrix; product is composition."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, dim):
        return cls(tuple(tuple(int(i == j) for j in range(dim))
                         for i in range(dim)))

    @property
    def dim(self):
        return len(self.rows)

    def __mul__(self, other):
        cols = tuple(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows))

    def is_signed_monomial(self):
        seen_rows = set()
        for j in range(self.dim):
            col = [self.rows[i][j] for i in range(self.dim)]
            nz = [(i, v) for i, v in enumerate(col) if v]
            if len(nz) != 1 or nz[0][1] not in (1, -1) or nz[0][0] in seen_rows:
                return False
            seen_rows.add(nz[0][0])
        return True

    def inv(self):
        """Inverse, available exactly for signed monomial matrices
        (they are orthogonal, so the inverse is the transpose)."""
        if not self.is_signed_monomial():
            raise ValueError("inverse implemented for signed monomial "
                             "matrices only")
        return IntMatrix(tuple(zip(*self.rows)))

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, g):
        """g^-1 * self * g, matching the signed-permutation convention."""
        return g.inv() * self * g

    def is_symplectic(self):
        """Preserves the form <e_i, f_i> = 1 = -<f_i, e_i> exactly."""
        if self.dim % 2:
            return False
        n = self.dim // 2

        def form(u, v):
            return sum(u[k] * v[n + k] - u[n + k] * v[k] for k in range(n))

        cols = tuple(zip(*self.rows))
        for i in range(2 * n):
            for j in range(2 * n):
                want = 1 if j == i + n else (-1 if i == j + n else 0)
                if form(cols[i], cols[j]) != want:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.rows!r})"


class ClosureExceedsCap(RuntimeError):
    pass


def matrix_closure(gens, cap=20000):
    """Every element of the group generated by gens, identity first."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].dim
    if any(g.dim != dim for g in gens):
        raise ValueError("generators have mixed dimensions")
    elems = [IntMatrix.identity(dim)]
    seen = {elems[0]}
    i = 0
    while i < len(elems):
        x = elems[i]
        i += 1
        for g in gens:
            y = x * g
            if y not in seen:
                if len(elems) >= cap:
                    raise ClosureExceedsCap(f"closure exceeds cap {cap}")
                seen.add(y)
                elems.append(y)
    return elems


# ---------------------------------------------------------------------------
# Chevalley generators
# ---------------------------------------------------------------------------

def _root_entries(root):
    nz = [(k, v) for k, v in enumerate(root) if v]
    if len(nz) == 1 and nz[0][1] in (2, -2):
        return nz
    if (len(nz) == 2 and all(v in (1, -1) for _, v in nz)):
        return nz
    raise ValueError(f"not a type-C root: {tuple(root)!r}")


def _x_matrix(root, t):
    n = len(root)
    rows = [[int(i == j) for j in range(2 * n)] for i in range(2 * n)]
    nz = _root_entries(root)
    if len(nz) == 1:
        k, v = nz[0]
        if v == 2:
            rows[k][n + k] += t
        else:
            rows[n + k][k] += t
    else:
        (i, vi), (j, vj) = nz
        if (vi, vj) == (1, -1):
            rows[i][j] += t
            rows[n + j][n + i] -= t
        elif (vi, vj) == (-1, 1):
            rows[j][i] += t
            rows[n + i][n + j] -= t
        elif (vi, vj) == (1, 1):
            rows[i][n + j] += t
            rows[j][n + i] += t
        else:
            rows[n + j][i] += t
            rows[n + i][j] += t
    return IntMatrix(rows)


def chevalley_generator(kind, root, t):
    """x_alpha(t), n_alpha(t) or h_alpha(t) as an integer matrix, t = +-1.

    n_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t) and
    h_alpha(t) = n_alpha(t) n_alpha(1)^-1.
    """
    if t not in (1, -1):
        raise ValueError(f"integer matrices need t in {{1, -1}}, got {t!r}")
    _root_entries(root)
    if kind == "x":
        return _x_matrix(root, t)
    neg = tuple(-c for c in root)
    n_t = _x_matrix(root, t) * _x_matrix(neg, -t) * _x_matrix(root, t)
    if kind == "n":
        return n_t
    if kind == "h":
        n_1 = _x_matrix(root, 1) * _x_matrix(neg, -1) * _x_matrix(root, 1)
        return n_t * n_1.inv()
    raise ValueError(f"kind must be one of x, n, h, got {kind!r}")


def rho(m):
    """Signed permutation of the monomial pattern, f_i read as e_{-i}."""
    if not m.is_signed_monomial():
        raise ValueError("rho needs a signed monomial matrix")
    dim = m.dim
    if dim % 2:
        raise ValueError("odd dimension is not symplectic")
    n = dim // 2
    pos = []
    for j in range(dim):
        pos.append(next(i for i in range(dim) if m.rows[i][j]))
    for i in range(n):
        partner = pos[i] + n if pos[i] < n else pos[i] - n
        if pos[i + n] != partner:
            raise ValueError("monomial pattern breaks the symplectic pairing")
    img = tuple(pos[i] + 1 if pos[i] < n else -(pos[i] - n + 1)
                for i in range(n))
    return SignedPerm(img)


# ---------------------------------------------------------------------------
# twist elements
# ---------------------------------------------------------------------------

TwistElements = namedtuple(
    "TwistElements",
    ["n", "d", "d0", "l", "a", "v0", "v", "c", "p", "p_pair", "h", "v_prime"])


def _unit(n, i, value=1):
    root = [0] * n
    root[i - 1] = value
    return tuple(root)


def _diff(n, i, j):
    root = [0] * n
    root[i - 1], root[j - 1] = 1, -1
    return tuple(root)


def build_twist_elements(n, d):
    """The lift v of the Sylow twist and its grid-set companions.

    c_i lifts the long signed cycle on the i-th grid set (chosen to
    centralize v via a deterministic diagonal correction), p_k lifts
    the swap of grid sets k, k+1, h_i is the diagonal -1 on the i-th
    grid set, and v_prime = c_1 ... c_a.
    """
    if n < 1:
        raise ValueError("n must be positive")
    d0 = compute_d0("BCD", d)
    l = (n // d0) * d0
    dim = 2 * n
    ident = IntMatrix.identity(dim)
    if l == 0:
        return TwistElements(n, d, d0, 0, 0, ident, ident, (), (), {}, (),
                             ident)
    a = l // d0

    v0 = ident
    for i in range(1, l):
        v0 = v0 * chevalley_generator("n", _diff(n, i, i + 1), 1)
    v0 = v0 * chevalley_generator("n", _unit(n, l, 2), -1)
    v = v0 ** (2 * l // d)
    assert rho(v) == sylow_twist_w(n, d)

    grids = [grid_set(d0, a, i) for i in range(1, a + 1)]
    hs = []
    for J in grids:
        h = ident
        for j in J:
            h = h * chevalley_generator("h", _unit(n, j, 2), -1)
        hs.append(h)

    J1 = grids[0]
    c1 = chevalley_generator("n", _unit(n, J1[0], 2), 1)
    for j1, j2 in zip(J1, J1[1:]):
        c1 = c1 * chevalley_generator("n", _diff(n, j1, j2), 1)
    assert rho(c1) == wprime(J1, n)
    for mask in range(2 ** len(J1)):
        delta = ident
        for bit, j in enumerate(J1):
            if mask >> bit & 1:
                delta = delta * chevalley_generator("h", _unit(n, j, 2), -1)
        cand = c1 * delta
        if cand * v == v * cand:
            c1 = cand
            break
    else:
        raise AssertionError("no diagonal correction makes c_1 "
                             "centralize v")

    ps = []
    for k in range(1, a):
        g = chevalley_generator("n", _diff(n, k, k + 1), 1)
        pk = ident
        for i in range(d0):
            pk = pk * g.conj(v ** i)
        assert rho(pk) == tau(grids[k - 1], grids[k], n)
        assert pk * pk == hs[k - 1] * hs[k]
        ps.append(pk)

    cs = [c1]
    for k in range(1, a):
        cs.append(cs[-1].conj(ps[k - 1]))
    for k, ck in enumerate(cs):
        assert rho(ck) == wprime(grids[k], n)

    p_pair = {}
    for k in range(1, a + 1):
        p_pair[(k, k)] = ident
        for kp in range(k + 1, a + 1):
            conjugator = ident
            for m in range(k + 1, kp):
                conjugator = conjugator * ps[m - 1]
            p_pair[(k, kp)] = ps[k - 1].conj(conjugator)

    v_prime = ident
    for ck in cs:
        v_prime = v_prime * ck
    assert v_prime * v == v * v_prime

    return TwistElements(n, d, d0, l, a, v0, v, tuple(cs), tuple(ps), p_pair,
                         tuple(hs), v_prime)


# ---------------------------------------------------------------------------
# the lifted relative Weyl group of a label
# ---------------------------------------------------------------------------

def build_VdI(label):
    """Matrix generators of V_d^I and of its diagonal subgroup H_d^I.

    Per block size s the grid-set elements h_i, c_i (i <= t_s) and p_k
    (k < t_s) are replicated across the s grid positions of every orbit
    by the injection x -> prod_j x^(eta_j), where eta_j chains the
    p-swaps taking grid set i to the j-th grid set of the i-th orbit.
    """
    if label.n > 4:
        raise ValueError("matrix construction is limited to rank <= 4")
    te = build_twist_elements(label.n, label.d)
    n = label.n
    ident = IntMatrix.identity(2 * n)
    gens, hs = [], []
    for s in sorted(label.orbits):
        orbs = label.orbits[s]
        ts = len(orbs)
        etas = []
        for j in range(s):
            eta = ident
            for i in range(ts, 0, -1):
                eta = eta * te.p_pair[(i, orbs[i - 1].J_O[j])]
            etas.append(eta)

        def kappa(x, etas=etas):
            out = ident
            for eta in etas:
                out = out * x.conj(eta)
            return out

        for i in range(ts):
            kh = kappa(te.h[i])
            kc = kappa(te.c[i])
            assert rho(kh) == SignedPerm.identity(n)
            assert rho(kc) == wprime_Q(orbs[i].Q, n)
            gens += [kh, kc]
            hs.append(kh)
        for k in range(ts - 1):
            kp = kappa(te.p[k])
            assert rho(kp) == tau_Q(orbs[k].Q, orbs[k + 1].Q, n)
            gens.append(kp)
    return tuple(gens), tuple(hs)
