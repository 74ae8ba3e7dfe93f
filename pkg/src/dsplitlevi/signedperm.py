"""Signed permutations of {±1, ..., ±n} and their structural subgroups.

A signed permutation σ satisfies σ(-i) = -σ(i), so only the images of
the positive points are stored.  Project-wide conventions, fixed here
once and used by every other module:

* composition is (a∘b)(x) = a(b(x));
* conjugation is x^g = g⁻¹∘x∘g (so x^(g∘h) = (x^g)^h).

Besides the group operations the module provides

* the canonical generators w′_J (the 2k-cycle through J and -J),
  τ_{J,J′} (sign-respecting block swap) and ι_J (sign flips on J),
  together with the arithmetic-progression index sets ("grid sets")
  they are usually evaluated on;
* the cycle statistics (m1 = self-paired cycles, m2 = paired cycle
  pairs) that determine the centralizer of an element, with the
  predicted centralizer order;
* brute-force closure / normalizer routines used to verify the
  structural formulas on small ranks, and the generator sets for
  products of block wreath subgroups and their predicted normalizers.
"""

from __future__ import annotations

import itertools
import re
from collections import namedtuple
from math import factorial


class ClosureExceedsCap(RuntimeError):
    """Raised when a brute-force closure grows past its element cap."""


_CYCLES_RE = re.compile(r"\(([^()]*)\)")


class SignedPerm:
    """A signed permutation, stored by the images of 1..n."""

    __slots__ = ("img",)

    def __init__(self, img):
        img = tuple(img)
        n = len(img)
        if sorted(abs(v) for v in img) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {img!r}")
        self.img = img

    # -- basic protocol ----------------------------------------------------

    @property
    def n(self):
        return len(self.img)

    def __call__(self, i):
        if not isinstance(i, int) or i == 0 or abs(i) > self.n:
            raise ValueError(f"point {i!r} out of range for rank {self.n}")
        v = self.img[abs(i) - 1]
        return v if i > 0 else -v

    def __eq__(self, other):
        return isinstance(other, SignedPerm) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __lt__(self, other):
        return self.img < other.img

    def __repr__(self):
        return f"SignedPerm.from_cycles({self.to_cycles()!r}, {self.n})"

    # -- group structure ---------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    def is_identity(self):
        return self.img == tuple(range(1, self.n + 1))

    def __mul__(self, other):
        """(self∘other)(x) = self(other(x))."""
        if not isinstance(other, SignedPerm):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        return SignedPerm(self(v) for v in other.img)

    def inv(self):
        img = [0] * self.n
        for i, v in enumerate(self.img, start=1):
            if v > 0:
                img[v - 1] = i
            else:
                img[-v - 1] = -i
        return SignedPerm(img)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = SignedPerm.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, g):
        """self^g = g⁻¹∘self∘g."""
        return g.inv() * self * g

    def order(self):
        k, p = 1, self
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    # -- bar projection and signs -------------------------------------------

    def bar(self):
        """The underlying plain permutation |σ| (a signed perm with +images)."""
        return SignedPerm(abs(v) for v in self.img)

    def sign(self, i):
        """ε(i) with σ·e_i = ε(i)·e_{bar(i)}, i.e. the sign of σ(i)."""
        return 1 if self(i) > 0 else -1

    # -- cycle notation -----------------------------------------------------

    def cycles(self):
        """All cycles of the action on {±1..±n}, fixed points included."""
        seen, out = set(), []
        for start in itertools.chain(range(1, self.n + 1),
                                     range(-1, -self.n - 1, -1)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            p = self(start)
            while p != start:
                cyc.append(p)
                seen.add(p)
                p = self(p)
            out.append(tuple(cyc))
        return out

    def to_cycles(self):
        """Canonical cycle string, e.g. ``"(1,2,-1,-2)(3,-3)"``.

        Of each pair {α, -α} of distinct cycles only the one containing
        the smaller positive point is written; self-paired cycles are
        rotated to start at their smallest positive point.  Fixed signed
        points are omitted; the identity renders as ``"()"``.
        """
        reps, used = [], set()
        for cyc in self.cycles():
            if len(cyc) == 1 or frozenset(cyc) in used:
                continue
            used.add(frozenset(cyc))
            neg = tuple(-c for c in cyc)
            if frozenset(neg) == frozenset(cyc):
                chosen = cyc
            else:
                used.add(frozenset(neg))
                pool = min(c for c in cyc + neg if c > 0)
                chosen = cyc if pool in cyc else neg
            start = chosen.index(min(c for c in chosen if c > 0))
            reps.append(chosen[start:] + chosen[:start])
        if not reps:
            return "()"
        reps.sort(key=lambda c: c[0])
        return "".join("(" + ",".join(map(str, c)) + ")" for c in reps)

    @classmethod
    def from_cycles(cls, text, n):
        """Parse cycle notation; points absent from ``text`` are fixed."""
        text = text.strip().replace(" ", "")
        if text in ("", "()"):
            return cls.identity(n)
        if not re.fullmatch(r"(\(-?\d+(,-?\d+)*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        img = {}
        for grp in _CYCLES_RE.findall(text):
            pts = [int(t) for t in grp.split(",")]
            if any(p == 0 or abs(p) > n for p in pts):
                raise ValueError(f"point out of range for rank {n}: ({grp})")
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle ({grp})")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                for x, y in ((a, b), (-a, -b)):
                    if img.setdefault(x, y) != y:
                        raise ValueError(f"inconsistent cycles in {text!r}")
        return cls(img.get(i, i) for i in range(1, n + 1))


def compose(a, b):
    """(a∘b)(x) = a(b(x)); the project-wide composition convention."""
    return a * b


# ---------------------------------------------------------------------------
# cycle statistics and centralizer shapes
# ---------------------------------------------------------------------------

CycleData = namedtuple("CycleData", ["bar", "sign", "self_paired", "paired"])


def cycle_data(s):
    """Bar projection, sign function and the self-paired/paired cycle split.

    A cycle α of s on {±1..±n} either coincides with -α as a set
    (self-paired; necessarily of even length) or pairs up with the
    distinct cycle -α.  ``self_paired`` lists each self-paired cycle
    once; ``paired`` lists one representative of each {α, -α} pair
    (fixed points included as 1-cycles).  Both use the same canonical
    rotation/representative choice as :meth:`SignedPerm.to_cycles`.
    """
    self_paired, paired, used = [], [], set()
    for cyc in s.cycles():
        if frozenset(cyc) in used:
            continue
        used.add(frozenset(cyc))
        neg = tuple(-c for c in cyc)
        if frozenset(neg) == frozenset(cyc):
            bucket = self_paired
            chosen = cyc
        else:
            used.add(frozenset(neg))
            bucket = paired
            pool = min(c for c in cyc + neg if c > 0)
            chosen = cyc if pool in cyc else neg
        start = chosen.index(min(c for c in chosen if c > 0))
        bucket.append(chosen[start:] + chosen[:start])
    self_paired.sort(key=lambda c: c[0])
    paired.sort(key=lambda c: c[0])
    sign = {i: s.sign(i) for i in range(1, s.n + 1)}
    return CycleData(s.bar(), sign, self_paired, paired)


class CentralizerType:
    """Cycle statistics (m1, m2) of an element and the centralizer order.

    m1[i] counts self-paired cycles of length 2i, m2[i] counts pairs
    {α, -α} of cycles of length i.  The centralizer is a direct product
    of wreath products — C_{2i} wr S_{m1[i]} for the self-paired part
    and, for the paired part, C_{2i} wr S_{m2[i]} (i odd) or
    (C2 × C_i) wr S_{m2[i]} (i even) — so its order is
    ∏ (2i)^{m1[i]} m1[i]! · ∏ (2i)^{m2[i]} m2[i]!.
    """

    def __init__(self, m1, m2):
        self.m1 = {i: c for i, c in sorted(m1.items()) if c}
        self.m2 = {i: c for i, c in sorted(m2.items()) if c}
        order = 1
        for i, c in itertools.chain(self.m1.items(), self.m2.items()):
            order *= (2 * i) ** c * factorial(c)
        self.order = order

    def __eq__(self, other):
        return (isinstance(other, CentralizerType)
                and self.m1 == other.m1 and self.m2 == other.m2)

    def __repr__(self):
        return f"CentralizerType(m1={self.m1}, m2={self.m2}, order={self.order})"

    def describe(self):
        parts = [f"C{2 * i} wr S{c}" for i, c in self.m1.items()]
        for i, c in self.m2.items():
            if i % 2 == 1:
                parts.append(f"C{2 * i} wr S{c}")
            else:
                parts.append(f"(C2 x C{i}) wr S{c}")
        return " x ".join(parts) if parts else "1"


def centralizer_type(s):
    """The (m1, m2) statistics of ``s`` and its predicted centralizer order."""
    data = cycle_data(s)
    m1, m2 = {}, {}
    for cyc in data.self_paired:
        i = len(cyc) // 2
        m1[i] = m1.get(i, 0) + 1
    for cyc in data.paired:
        i = len(cyc)
        m2[i] = m2.get(i, 0) + 1
    return CentralizerType(m1, m2)


# ---------------------------------------------------------------------------
# canonical generators
# ---------------------------------------------------------------------------

def _check_index_set(J, n):
    J = tuple(J)
    if not J or any(not 1 <= j <= n for j in J) or list(J) != sorted(set(J)):
        raise ValueError(f"not an index set within 1..{n}: {J!r}")
    return J


def wprime(J, n):
    """The 2k-cycle (J(1), ..., J(k), -J(1), ..., -J(k))."""
    J = _check_index_set(J, n)
    img = {J[i]: J[i + 1] for i in range(len(J) - 1)}
    img[J[-1]] = -J[0]
    return SignedPerm(img.get(i, i) for i in range(1, n + 1))


def tau(J, Jp, n):
    """∏_i (J(i), J′(i))(-J(i), -J′(i)); identity when J = J′."""
    J, Jp = _check_index_set(J, n), _check_index_set(Jp, n)
    if J == Jp:
        return SignedPerm.identity(n)
    if len(J) != len(Jp):
        raise ValueError(f"size mismatch: {J!r} vs {Jp!r}")
    if set(J) & set(Jp):
        raise ValueError(f"overlapping index sets: {J!r}, {Jp!r}")
    img = {a: b for a, b in zip(J, Jp)}
    img.update({b: a for a, b in zip(J, Jp)})
    return SignedPerm(img.get(i, i) for i in range(1, n + 1))


def iota(J, n):
    """∏_{i∈J} (i, -i): sign flips on J."""
    J = _check_index_set(J, n)
    return SignedPerm(-i if i in set(J) else i for i in range(1, n + 1))


def grid_set(k, m, i):
    """The arithmetic progression {i + j·m : 0 ≤ j ≤ k-1} (as a tuple).

    For 1 ≤ i ≤ m these partition {1..km} into m sets of size k; the
    j-th element of the i-th set is i + (j-1)m.
    """
    if k < 1 or m < 1 or not 1 <= i <= m:
        raise ValueError(f"bad grid parameters k={k}, m={m}, i={i}")
    return tuple(i + j * m for j in range(k))


def make_generator(kind, n, *args):
    """Dispatch constructor: wprime(J) | tau(J, J′) | iota(J) | grid(k, m, i)."""
    if kind == "wprime":
        return wprime(args[0], n)
    if kind == "tau":
        return tau(args[0], args[1], n)
    if kind == "iota":
        return iota(args[0], n)
    if kind == "grid":
        k, m, i = args
        return wprime(grid_set(k, m, i), n)
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# brute force: closure, normalizer, standard groups
# ---------------------------------------------------------------------------

def group_closure(gens, cap=20000):
    """Every element of ⟨gens⟩, identity first, in breadth-first order."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators have mixed ranks")
    elems = [SignedPerm.identity(n)]
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


def signed_symmetric_group(n):
    """The full group of signed permutations of rank n (order 2^n n!)."""
    gens = [iota((1,), n)]
    gens += [tau((i,), (i + 1,), n) for i in range(1, n)]
    return group_closure(gens, cap=2 ** n * factorial(n))


def brute_normalizer(H, G):
    """{g ∈ G : H^g = H} by exhaustive check; H must be a subgroup of G."""
    H, G = list(H), list(G)
    hset, gset = set(H), set(G)
    if not hset <= gset:
        raise ValueError("H is not contained in G")
    if SignedPerm.identity(H[0].n) not in hset:
        raise ValueError("H does not contain the identity")
    for a, b in itertools.product(H, H):
        if a * b not in hset:
            raise ValueError("H is not closed under composition")
    out = []
    for g in G:
        gi = g.inv()
        if all(gi * h * g in hset for h in H):
            out.append(g)
    return out


def brute_centralizer(x, G):
    """{g ∈ G : gx = xg} by exhaustive check."""
    return [g for g in G if g * x == x * g]


# ---------------------------------------------------------------------------
# products of block wreath subgroups and their normalizers
# ---------------------------------------------------------------------------

def set_partitions(n):
    """All partitions of {1..n}, blocks sorted, blocks ordered by minimum."""
    parts = [[]]
    for x in range(1, n + 1):
        nxt = []
        for p in parts:
            for i in range(len(p)):
                nxt.append(p[:i] + [p[i] + (x,)] + p[i + 1:])
            nxt.append(p + [(x,)])
        parts = nxt
    return [tuple(sorted(p, key=min)) for p in parts]


def block_wreath_generators(blocks, signed, n):
    """Generators of H = ∏_J A_J wr S(J) inside the rank-n signed group.

    Each block J carries either A_J = C2 (``signed`` flag set: the full
    signed permutation group of J) or A_J = 1 (plain permutations of J,
    acting on ±J without sign changes).  The identity is always
    included so that trivial configurations still close.
    """
    gens = [SignedPerm.identity(n)]
    for J, sgn in zip(blocks, signed):
        gens += [tau((a,), (b,), n) for a, b in zip(J, J[1:])]
        if sgn:
            gens.append(iota((J[0],), n))
    return gens


def block_wreath_normalizer_generators(blocks, signed, n):
    """Generators of the predicted normalizer of a block wreath product.

    The normalizer of H = ∏_J A_J wr S(J) is generated by H itself, the
    diagonal sign flips ι_J on each block, and the swaps τ_{J,J′} of
    blocks of equal size carrying the same A_J.
    """
    gens = list(block_wreath_generators(blocks, signed, n))
    gens += [iota(J, n) for J in blocks]
    for (J1, s1), (J2, s2) in itertools.combinations(zip(blocks, signed), 2):
        if len(J1) == len(J2) and s1 == s2:
            gens.append(tau(J1, J2, n))
    return gens
