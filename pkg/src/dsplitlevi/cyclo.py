"""Exact arithmetic in cyclotomic fields and the eigenspace subspace test.

``CycNum`` represents an element of Q(ζ_d) as a rational coefficient
vector in the power basis 1, ζ, ..., ζ^{φ(d)-1} of Q[x]/(Φ_d).  All
arithmetic is exact (Fractions); inversion uses the extended Euclidean
algorithm against Φ_d.

On top of that the module provides the eigenspace of a signed
permutation for the eigenvalue ζ_d^k, solved exactly, and the subspace
test that recognises the root subsystems cut out by a twist element:
Φ_L passes for π at d iff

    (V(π, ζ) ∩ Φ_L^⊥)^⊥ ∩ Φ = Φ_L,

with all perps taken for the bilinear extension of the dot product.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy


# ---------------------------------------------------------------------------
# polynomial helpers over Q (coefficient lists, ascending degree)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cyclotomic(d):
    """Coefficients of Φ_d, ascending, as a tuple of ints."""
    coeffs = sympy.Poly(sympy.cyclotomic_poly(d, sympy.Symbol("x"))).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _ptrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    while len(a) >= len(b) and _ptrim(a):
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        _ptrim(a)
    return _ptrim(q), a


def _pext_gcd(a, b):
    """(g, u, v) with u·a + v·b = g, g the monic gcd."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while _ptrim(list(r1)):
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim([x - y for x, y in _pzip(s0, _pmul(q, s1))])
        t0, t1 = t1, _ptrim([x - y for x, y in _pzip(t0, _pmul(q, t1))])
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        s0 = [c / lead for c in s0]
        t0 = [c / lead for c in t0]
    return r0, s0, t0


def _pzip(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

class CycNum:
    """An element of Q(ζ_d) in the power basis of Q[x]/(Φ_d)."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d, coeffs):
        phi = len(_cyclotomic(d)) - 1
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(
                f"conductor {d} needs {phi} coefficients, got {len(coeffs)}")
        self.d = d
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, d):
        return cls(d, [0] * (len(_cyclotomic(d)) - 1))

    @classmethod
    def one(cls, d):
        return cls.from_rational(1, d)

    @classmethod
    def from_rational(cls, q, d):
        phi = len(_cyclotomic(d)) - 1
        return cls(d, [Fraction(q)] + [0] * (phi - 1))

    @classmethod
    def _from_poly(cls, poly, d):
        _, rem = _pdivmod(list(poly), [Fraction(c) for c in _cyclotomic(d)])
        phi = len(_cyclotomic(d)) - 1
        rem = list(rem) + [Fraction(0)] * (phi - len(rem))
        return cls(d, rem)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.d != self.d:
                raise ValueError(f"conductor mismatch: {self.d} vs {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.d, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.d, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._from_poly(_pmul(list(self.coeffs), list(o.coeffs)), self.d)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi_d = [Fraction(c) for c in _cyclotomic(self.d)]
        g, u, _ = _pext_gcd(list(self.coeffs), phi_d)
        if len(g) != 1:
            raise ArithmeticError("element not invertible (Φ_d not coprime?)")
        return CycNum._from_poly([c / g[0] for c in u], self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = CycNum.one(self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure maps -------------------------------------------------------

    def promote(self, D):
        """Embed into Q(ζ_D) along ζ_d ↦ ζ_D^{D/d}; requires d | D."""
        if D % self.d:
            raise ValueError(f"{self.d} does not divide {D}")
        step = D // self.d
        poly = []
        for j, c in enumerate(self.coeffs):
            if c:
                k = j * step
                while len(poly) <= k:
                    poly.append(Fraction(0))
                poly[k] += c
        return CycNum._from_poly(poly, D)

    def galois(self, k):
        """The Galois image ζ ↦ ζ^k; requires gcd(k, d) = 1."""
        if gcd(k, self.d) != 1:
            raise ValueError(f"ζ^{k} is not primitive modulo {self.d}")
        poly = []
        for j, c in enumerate(self.coeffs):
            if c:
                e = (j * k) % self.d
                while len(poly) <= e:
                    poly.append(Fraction(0))
                poly[e] += c
        return CycNum._from_poly(poly, self.d)

    def conjugate(self):
        """Complex conjugation ζ ↦ ζ^{-1}."""
        if self.d <= 2:
            return self
        return self.galois(self.d - 1)

    # -- predicates and protocol ----------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other, self.d)
        return (isinstance(other, CycNum) and self.d == other.d
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.d, self.coeffs))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ("+" if terms else "")
                terms.append(f"{sign}{mag}z{self.d}" + (f"^{j}" if j > 1 else ""))
        return "".join(terms) if terms else "0"


def zeta(d, k=1):
    """ζ_d^k as a CycNum."""
    k %= d
    poly = [Fraction(0)] * k + [Fraction(1)]
    return CycNum._from_poly(poly, d)


# ---------------------------------------------------------------------------
# vectors over a cyclotomic field
# ---------------------------------------------------------------------------

class CycVector:
    """A fixed-length vector of CycNum with a common conductor."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("empty vector")
        d = entries[0].d
        if any(e.d != d for e in entries):
            raise ValueError("mixed conductors in vector")
        self.entries = entries

    @classmethod
    def from_ints(cls, vec, d):
        return cls(CycNum.from_rational(c, d) for c in vec)

    @property
    def d(self):
        return self.entries[0].d

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other):
        return CycVector(a + b for a, b in zip(self.entries, other.entries))

    def scale(self, c):
        return CycVector(c * e for e in self.entries)

    def dot(self, other):
        """Bilinear pairing; ``other`` may be a CycVector or an int tuple."""
        if isinstance(other, CycVector):
            other = other.entries
        if len(other) != len(self.entries):
            raise ValueError("length mismatch in dot product")
        out = CycNum.zero(self.d)
        for a, b in zip(self.entries, other):
            out = out + a * b
        return out

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        return isinstance(other, CycVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "CycVector(" + ", ".join(map(repr, self.entries)) + ")"


def _nullspace(rows, ncols, d):
    """Basis of {x : R x = 0} for a matrix over Q(ζ_d), by exact RREF."""
    rows = [list(r) for r in rows if not all(c.is_zero() for c in r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows))
                      if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    one, nil = CycNum.one(d), CycNum.zero(d)
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [nil] * ncols
        v[fc] = one
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# eigenspaces of signed permutations
# ---------------------------------------------------------------------------

def eigenspace_basis(pi, d, k=1):
    """Exact basis of {a ∈ Q(ζ_d)^n : π·a = ζ_d^k a}.

    π acts by π·e_i = ε(i) e_{bar(i)}, so on each cycle of bar(π) the
    coordinates propagate by a_{bar(i)} = ε(i) ζ^{-k} a_i and the cycle
    contributes one basis vector iff the signs multiply to ζ^{k·len}.
    """
    if gcd(k, d) != 1:
        raise ValueError(f"ζ_{d}^{k} is not a primitive root of unity")
    n = pi.n
    zinv = zeta(d, -k % d)
    basis, seen = [], set()
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        p = abs(pi(start))
        while p != start:
            cycle.append(p)
            seen.add(p)
            p = abs(pi(p))
        eps = 1
        for i in cycle:
            eps *= pi.sign(i)
        if zeta(d, (k * len(cycle)) % d) != CycNum.from_rational(eps, d):
            continue
        entries = [CycNum.zero(d)] * n
        val = CycNum.one(d)
        i = start
        for _ in cycle:
            entries[i - 1] = val
            val = val * zinv * pi.sign(i)
            i = abs(pi(i))
        basis.append(CycVector(entries))
    return basis


def check_eq1(pi, d, roots, ambient):
    """The exact double-perp test for a root subset against a twist.

    Computes U = V(π, ζ_d) ∩ roots^⊥ by exact linear algebra, then
    U^⊥ ∩ Φ, and reports whether that equals the input set.
    """
    roots = [tuple(r) for r in roots]
    V = eigenspace_basis(pi, d, 1)
    U = []
    if V:
        rows = [[b.dot(r) for b in V] for r in roots]
        for combo in _nullspace(rows, len(V), d):
            u = V[0].scale(combo[0])
            for c, b in zip(combo[1:], V[1:]):
                u = u + b.scale(c)
            U.append(u)
    perp = {beta for beta in ambient.roots
            if all(u.dot(beta).is_zero() for u in U)}
    return perp == set(roots)


def primitive_power_sign_check(pi, d):
    """ζ^k avoids ±ε_{π^k}(i) for all 0 < k < d0 and all i, exactly.

    d0 is d for odd d and d/2 for even d (the type B/C/D convention).
    """
    d0 = d if d % 2 else d // 2
    for k in range(1, d0):
        zk = zeta(d, k)
        pk = pi ** k
        for i in range(1, pi.n + 1):
            e = pk.sign(i)
            if zk == CycNum.from_rational(e, d) or zk == CycNum.from_rational(-e, d):
                return False
    return True
