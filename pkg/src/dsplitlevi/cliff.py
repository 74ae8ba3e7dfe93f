"""Inertia subgroups, sign characters, and the invariance criterion.

Character classes living on the general-linear factors of a Levi
subgroup are abstracted to :class:`CharClassDescriptor` (cyclic
stabilizer order inside C_{2d0}, order of the central character, and
the derived "jump" to the index-two cover).  A :class:`CharLabel`
attaches one descriptor to every block orbit of a
:class:`~dsplitlevi.levi.LeviLabel`.

From a label the module produces concrete signed-permutation groups:

* ``stab_lambda`` — the inertia subgroup W_lambda inside the relative
  Weyl group, a direct product of C_c wr S_m factors;
* ``nu_lambda``  — the sign character detecting the index-two cover,
  and its kernel;
* ``k_lambda``   — the normalizer closure Z.W_lambda : S, where S
  permutes interchangeable descriptor classes;
* ``kinva_check`` — brute-force verification that every irreducible
  character of ker(nu) has an induction constituent invariant under
  its stabilizer in the normalizer closure;
* ``cuspidal_gate`` — the consistency predicate a label must satisfy
  to be compatible with d-cuspidality.
"""

import itertools
from math import factorial

from .chartab import FiniteGroup, character_table, ClassFunction, restrict, inner
from .levi import tau_Q, wprime_Q
from .signedperm import SignedPerm, group_closure, set_partitions

_NU_VERIFY_BOUND = 5000


def _sylow2(m):
    """Order of the Sylow 2-subgroup of a cyclic group of order m."""
    out = 1
    while m % 2 == 0:
        out *= 2
        m //= 2
    return out


def _is_jump(stab_order, central_order, two_d0):
    if two_d0 % stab_order:
        raise ValueError(
            f"stabilizer order {stab_order} does not divide {two_d0}")
    return central_order == 2 and stab_order % _sylow2(two_d0) == 0


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------

class CharClassDescriptor:
    """Registry data of one character class on a GL factor.

    ``id`` is an opaque distinguishing tag, ``s`` the GL-size of the
    orbits it may be attached to, ``stab_order`` the order of its cyclic
    stabilizer inside C_{2d0}, and ``central_order`` the order of the
    attached central character.
    """

    __slots__ = ("id", "s", "stab_order", "central_order")

    def __init__(self, id, s, stab_order, central_order):
        if s < 1 or stab_order < 1 or central_order < 1:
            raise ValueError("descriptor parameters must be positive")
        self.id = id
        self.s = s
        self.stab_order = stab_order
        self.central_order = central_order

    def stab_tilde_order(self, two_d0):
        """Stabilizer order in the index-two cover: halves exactly when
        the central character has order two and the stabilizer contains
        the Sylow 2-subgroup of C_{2d0}."""
        if _is_jump(self.stab_order, self.central_order, two_d0):
            return self.stab_order // 2
        return self.stab_order

    def in_R1(self, two_d0):
        return self.stab_tilde_order(two_d0) != self.stab_order

    def _key(self):
        return (self.id, self.s, self.stab_order, self.central_order)

    def __eq__(self, other):
        return (isinstance(other, CharClassDescriptor)
                and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"CharClassDescriptor({self.id!r}, s={self.s}, "
                f"c={self.stab_order}, central={self.central_order})")


class CharLabel:
    """A Levi label together with one descriptor per block orbit.

    ``assignment`` maps each block size s to a tuple of descriptors,
    one per orbit of that size in the Levi label's orbit order.  Orbits
    may share a descriptor; the ``J`` index sets group them.
    ``ltilde_full`` records whether the ambient index-two covering
    subgroup is all of the cover (it rescales the sign character).
    """

    __slots__ = ("levi", "assignment", "ltilde_full", "normalized")

    def __init__(self, levi, assignment, ltilde_full=True, normalized=True):
        if set(assignment) != set(levi.orbits):
            raise ValueError("assignment must cover exactly the orbit sizes "
                             f"{sorted(levi.orbits)}")
        two_d0 = 2 * levi.d0
        clean = {}
        for s, orbs in levi.orbits.items():
            descs = tuple(assignment[s])
            if len(descs) != len(orbs):
                raise ValueError(
                    f"size {s} needs {len(orbs)} descriptors, got {len(descs)}")
            for desc in descs:
                if desc.s != s:
                    raise ValueError(
                        f"descriptor of GL-size {desc.s} attached to an "
                        f"orbit of size {s}")
                desc.stab_tilde_order(two_d0)  # validates divisibility
            clean[s] = descs
        self.levi = levi
        self.assignment = clean
        self.ltilde_full = bool(ltilde_full)
        self.normalized = bool(normalized)

    @property
    def two_d0(self):
        return 2 * self.levi.d0

    def j_sets(self, s):
        """Descriptor classes of size s with their 1-based orbit indices,
        in order of first occurrence."""
        out = []
        seen = {}
        for i, desc in enumerate(self.assignment[s], start=1):
            if desc in seen:
                out[seen[desc]] = (desc, out[seen[desc]][1] + (i,))
            else:
                seen[desc] = len(out)
                out.append((desc, (i,)))
        return out

    def key(self):
        """Deterministic string identifying the label."""
        levi = self.levi
        pieces = [f"n{levi.n}", f"d{levi.d}",
                  "Im1=" + ",".join(map(str, levi.I_minus1)),
                  "I=" + "|".join(",".join(map(str, b)) for b in levi.I),
                  f"lt{int(self.ltilde_full)}"]
        for s in sorted(self.assignment):
            cell = ";".join(f"{d.id}:c{d.stab_order}:z{d.central_order}"
                            for d in self.assignment[s])
            pieces.append(f"s{s}[{cell}]")
        return " ".join(pieces)

    def __repr__(self):
        return f"CharLabel({self.key()!r})"


class SubgroupPresentation:
    """Concrete generators plus the abstract type and order they realize."""

    __slots__ = ("generators", "abstract_type", "order")

    def __init__(self, generators, abstract_type, order):
        self.generators = tuple(generators)
        self.abstract_type = abstract_type
        self.order = order

    def __repr__(self):
        return (f"SubgroupPresentation({self.abstract_type!r}, "
                f"order={self.order})")


def _require_normalized(label):
    if not label.normalized:
        raise ValueError(
            "label must be normalized to registry representatives")


# ---------------------------------------------------------------------------
# the shared generator calculus
#
# Both the concrete path (from a CharLabel) and the canonical path used
# by the invariance check (synthesized from the abstract class
# structure) reduce to a list of "parts": one part per descriptor
# class, carrying the GL-size, stabilizer order, jump flag, and the
# Q-sets of the orbits in its J index set.
# ---------------------------------------------------------------------------

class _Part:
    __slots__ = ("s", "c", "central", "in_r1", "Qs")

    def __init__(self, s, c, central, in_r1, Qs):
        self.s = s
        self.c = c
        self.central = central
        self.in_r1 = in_r1
        self.Qs = Qs


def _parts_from_label(label):
    two_d0 = label.two_d0
    parts = []
    for s in sorted(label.levi.orbits):
        orbs = label.levi.orbits[s]
        for desc, J in label.j_sets(s):
            parts.append(_Part(s, desc.stab_order, desc.central_order,
                               desc.in_R1(two_d0),
                               tuple(orbs[i - 1].Q for i in J)))
    return parts


def _build_W(parts, two_d0, n):
    """Generators, order, abstract type, and generator tags of W_lambda."""
    gens, tags, factors = [], [], []
    order = 1
    for idx, part in enumerate(parts):
        m = len(part.Qs)
        order *= part.c ** m * factorial(m)
        factors.append(f"C{part.c}wrS{m}")
        if part.c > 1:
            for Q in part.Qs:
                gens.append(wprime_Q(Q, n) ** (two_d0 // part.c))
                tags.append((idx, "cyclic"))
        for Q1, Q2 in zip(part.Qs, part.Qs[1:]):
            gens.append(tau_Q(Q1, Q2, n))
            tags.append((idx, "tau"))
    abstract = " x ".join(factors) if factors else "1"
    return gens, tags, order, abstract


def _extend_sign(gens, values, n, order):
    """Extend a ±1 assignment on generators to the whole closure,
    asserting multiplicative consistency; returns the sign map."""
    if not gens:
        return {SignedPerm.identity(n): 1}
    elements = group_closure(list(gens))
    if len(elements) != order:
        raise AssertionError("closure order disagrees with the formula")
    ident = SignedPerm.identity(n)
    signs = {ident: 1}
    queue = [ident]
    while queue:
        nxt = []
        for x in queue:
            vx = signs[x]
            for g, vg in zip(gens, values):
                y = x * g
                vy = vx * vg
                if y in signs:
                    if signs[y] != vy:
                        raise AssertionError(
                            "sign assignment on generators is inconsistent")
                else:
                    signs[y] = vy
                    nxt.append(y)
        queue = nxt
    return signs


def _build_nu(parts, two_d0, ltilde_full, n, w_gens, w_tags, w_order,
              w_abstract):
    """The ±1 values on the W_lambda generators and the kernel data."""
    values = []
    for (idx, kind), g in zip(w_tags, w_gens):
        part = parts[idx]
        if kind == "cyclic" and ltilde_full and part.in_r1:
            if part.c % 2:
                raise AssertionError("jump class with odd stabilizer order")
            values.append(-1)
        else:
            values.append(1)
    values = tuple(values)
    if all(v == 1 for v in values):
        return values, list(w_gens), w_order, w_abstract
    g0 = next(g for g, v in zip(w_gens, values) if v == -1)
    kgens = [g for g, v in zip(w_gens, values) if v == 1]
    kgens.append(g0 * g0)
    kgens.extend(g0 * g for g, v in zip(w_gens, values)
                 if v == -1 and g != g0)
    if w_order <= _NU_VERIFY_BOUND:
        signs = _extend_sign(w_gens, values, n, w_order)
        if sum(1 for v in signs.values() if v == 1) != w_order // 2:
            raise AssertionError("sign character kernel has wrong index")
    return values, kgens, w_order // 2, f"ker(nu) < {w_abstract}"


def _build_K(parts, two_d0, n, w_gens, nu_values):
    """Generators and order of the normalizer closure Z.W : S."""
    gens = []
    order = 1
    zw_factors = []
    for part in parts:
        m = len(part.Qs)
        diag = SignedPerm.identity(n)
        for Q in part.Qs:
            diag = diag * wprime_Q(Q, n)
        gens.append(diag)
        order *= two_d0 * part.c ** (m - 1) * factorial(m)
        zw_factors.append(f"(C{two_d0}.C{part.c}wrS{m})")
    gens.extend(w_gens)

    filtering = any(v == -1 for v in nu_values)
    families = {}
    for idx, part in enumerate(parts):
        key = (part.s, len(part.Qs), part.c)
        if filtering:
            key = key + (part.in_r1,)
        families.setdefault(key, []).append(idx)
    swap_sizes = []
    for key in sorted(families):
        members = families[key]
        if len(members) < 2:
            continue
        swap_sizes.append(len(members))
        order *= factorial(len(members))
        for a, b in zip(members, members[1:]):
            swap = SignedPerm.identity(n)
            for Qa, Qb in zip(parts[a].Qs, parts[b].Qs):
                swap = swap * tau_Q(Qa, Qb, n)
            gens.append(swap)
    gens = [g for g in dict.fromkeys(gens)
            if g != SignedPerm.identity(n)]
    abstract = " x ".join(zw_factors) if zw_factors else "1"
    if swap_sizes:
        abstract += " : " + " x ".join(f"S{m}" for m in swap_sizes)
    return gens, order, abstract


# ---------------------------------------------------------------------------
# public operations on labels
# ---------------------------------------------------------------------------

def stab_lambda(label):
    """The inertia subgroup W_lambda: per descriptor class, the order-c
    subgroups of the orbit cycles plus the block swaps inside its J
    index set; a direct product of C_c wr S_m factors."""
    _require_normalized(label)
    parts = _parts_from_label(label)
    n = label.levi.n
    gens, _, order, abstract = _build_W(parts, label.two_d0, n)
    return SubgroupPresentation(gens, abstract, order)


def nu_lambda(label):
    """The sign character of W_lambda and its kernel.

    The character is -1 exactly on the cyclic generators of jump
    classes (when the index-two cover is full), +1 on swaps; returns
    (values aligned with ``stab_lambda(label).generators``, kernel
    presentation)."""
    _require_normalized(label)
    parts = _parts_from_label(label)
    n = label.levi.n
    w_gens, w_tags, w_order, w_abstract = _build_W(parts, label.two_d0, n)
    values, kgens, korder, kabstract = _build_nu(
        parts, label.two_d0, label.ltilde_full, n, w_gens, w_tags,
        w_order, w_abstract)
    return values, SubgroupPresentation(kgens, kabstract, korder)


def k_lambda(label):
    """The normalizer closure K(lambda) = Z.W_lambda : S, where Z is one
    diagonal full cycle per descriptor class and S swaps classes of
    equal shape (restricted to preserve the jump family when the sign
    character is nontrivial)."""
    _require_normalized(label)
    parts = _parts_from_label(label)
    n = label.levi.n
    w_gens, w_tags, w_order, w_abstract = _build_W(parts, label.two_d0, n)
    values, _, _, _ = _build_nu(parts, label.two_d0, label.ltilde_full, n,
                                w_gens, w_tags, w_order, w_abstract)
    gens, order, abstract = _build_K(parts, label.two_d0, n, w_gens, values)
    return SubgroupPresentation(gens, abstract, order)


# ---------------------------------------------------------------------------
# the invariance check
# ---------------------------------------------------------------------------

def _canonical_structure(label):
    """The abstract class structure the invariance outcome depends on."""
    struct = []
    for s in sorted(label.levi.orbits):
        cell = tuple(sorted((len(J), desc.stab_order, desc.central_order)
                            for desc, J in label.j_sets(s)))
        struct.append((s, cell))
    return (label.two_d0, label.ltilde_full, tuple(struct))


def _synthesize_parts(structure_key):
    """A canonical concrete realization of an abstract class structure,
    on freshly allocated points; guarantees the invariance report is a
    function of the structure only."""
    two_d0, _, struct = structure_key
    d0 = two_d0 // 2
    parts = []
    next_pt = 1
    for s, cell in struct:
        for m, c, central in cell:
            Qs = []
            for _ in range(m):
                grids = []
                for _ in range(s):
                    grids.append(tuple(range(next_pt, next_pt + d0)))
                    next_pt += d0
                Qs.append(tuple(grids))
            parts.append(_Part(s, c, central, _is_jump(c, central, two_d0),
                               tuple(Qs)))
    return parts, max(next_pt - 1, 1)


def _conjugate_class_function(cf, k, group):
    """The class function x -> cf(k x k^{-1}) on the same group."""
    data = group.conjugacy_classes()
    ki = k.inv()
    return ClassFunction(group, tuple(
        cf.values[data.class_of[k * rep * ki]] for rep in data.reps))


def _as_group(gens, n, cap):
    gens = list(gens)
    if not gens:
        gens = [SignedPerm.identity(n)]
    return FiniteGroup.generate(gens, cap=cap)


_KINVA_MEMO = {}


def kinva_check(label, cap=10000):
    """Brute-force invariance report for a label.

    Realizes ker(nu) inside W_lambda inside the normalizer closure K as
    concrete permutation groups, and checks for every irreducible
    character xi0 of the kernel that some constituent of its induction
    to W_lambda is invariant under the stabilizer of xi0 in K.  The
    report depends only on the abstract class structure of the label
    (results are memoized on it) and is JSON-serializable:
    {label, W_lambda_order, ker_index, xi0_count, pass, witnesses}.
    """
    _require_normalized(label)
    key = _canonical_structure(label)
    if key not in _KINVA_MEMO:
        _KINVA_MEMO[key] = _kinva_compute(key, cap)
    report = dict(_KINVA_MEMO[key])
    report["witnesses"] = [dict(w) for w in report["witnesses"]]
    report["label"] = label.key()
    return report


def _kinva_compute(key, cap):
    two_d0, ltilde_full, _ = key
    parts, n = _synthesize_parts(key)
    w_gens, w_tags, w_order, w_abstract = _build_W(parts, two_d0, n)
    nu_values, ker_gens, ker_order, _ = _build_nu(
        parts, two_d0, ltilde_full, n, w_gens, w_tags, w_order, w_abstract)
    k_gens, k_order, _ = _build_K(parts, two_d0, n, w_gens, nu_values)

    W = _as_group(w_gens, n, cap)
    ker = _as_group(ker_gens, n, cap)
    K = _as_group(k_gens, n, cap)
    if W.order != w_order or ker.order != ker_order or K.order != k_order:
        raise AssertionError("closure order disagrees with the formula")
    for k in K.generators:
        ki = k.inv()
        for g in W.generators:
            if ki * g * k not in W.index:
                raise AssertionError("K does not normalize W_lambda")
        for g in ker.generators:
            if ki * g * k not in ker.index:
                raise AssertionError("K does not normalize ker(nu)")

    ker_table = character_table(ker, cap=cap)
    w_table = character_table(W, cap=cap)
    restrictions = [restrict(chi, ker) for chi in w_table.characters]

    witnesses = []
    all_pass = True
    for xi0_id, xi0 in enumerate(ker_table.characters):
        constituents = [i for i, res in enumerate(restrictions)
                        if inner(xi0, res) > 0]
        stabilizer = [k for k in K.elements
                      if _conjugate_class_function(xi0, k, ker) == xi0]
        xi_id = None
        for i in constituents:
            chi = w_table.characters[i]
            if all(_conjugate_class_function(chi, k, W) == chi
                   for k in stabilizer):
                xi_id = i
                break
        witnesses.append({"xi0_id": xi0_id, "xi_id": xi_id})
        if xi_id is None:
            all_pass = False
    return {
        "W_lambda_order": W.order,
        "ker_index": W.order // ker.order,
        "xi0_count": len(ker_table.characters),
        "pass": all_pass,
        "witnesses": witnesses,
    }


# ---------------------------------------------------------------------------
# the cuspidality gate
# ---------------------------------------------------------------------------

def cuspidal_gate(label):
    """Whether the label is consistent with d-cuspidality.

    Rules: no jump class may occur on an orbit of GL-size two or more
    (the center of the corresponding Levi factor must act trivially),
    and at most one descriptor class of GL-size one may lie in the jump
    set (the order-two central character is unique).  Labels passing
    the gate satisfy the hypotheses of the invariance criterion.
    """
    _require_normalized(label)
    two_d0 = label.two_d0
    for s, descs in label.assignment.items():
        if s >= 2 and any(d.in_R1(two_d0) for d in descs):
            return False
    r1 = {d for d in label.assignment.get(1, ()) if d.in_R1(two_d0)}
    return len(r1) <= 1


# ---------------------------------------------------------------------------
# exhaustive label generation
# ---------------------------------------------------------------------------

def _divisors(m):
    return tuple(c for c in range(1, m + 1) if m % c == 0)


def enumerate_char_labels(levi, central_orders=(1, 2)):
    """All character labels on ``levi`` at registry granularity.

    For every block size the orbits are grouped by each set partition
    (orbits in one part share a descriptor class), every class
    independently receives a cyclic stabilizer order dividing 2d0 and a
    central order from ``central_orders``, and both ambient-cover flags
    are emitted.  Central orders above two act exactly like one in
    every predicate the package consumes, so the default sweep is
    exhaustive up to those semantics.  Deterministic order.
    """
    two_d0 = 2 * levi.d0
    sizes = sorted(levi.orbits)
    per_size = []
    for s in sizes:
        t_s = len(levi.orbits[s])
        options = []
        for partition in set_partitions(t_s):
            params = tuple(itertools.product(_divisors(two_d0),
                                             central_orders))
            for combo in itertools.product(params, repeat=len(partition)):
                descs = [None] * t_s
                for k, (part, (c, z)) in enumerate(zip(partition, combo)):
                    desc = CharClassDescriptor(f"s{s}k{k}", s, c, z)
                    for i in part:
                        descs[i - 1] = desc
                options.append(tuple(descs))
        per_size.append(options)
    for choice in itertools.product(*per_size):
        assignment = dict(zip(sizes, choice))
        for ltilde_full in (True, False):
            yield CharLabel(levi, assignment, ltilde_full=ltilde_full)
