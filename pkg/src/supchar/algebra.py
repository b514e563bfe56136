"""Validated reduced algebras A = S (+) J over GF(q), the triple group and its
actions on J and J*, orbit enumeration, and the singular/regular classification.

Algebra elements are coefficient tuples of length dim over the field encoding
of fields.py.  Linear forms on J are coefficient tuples indexed by the radical
basis order.  The basis indices of the blocks and of the radical partition
range(dim), so S and J are coordinate subspaces.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import lcm

from . import linalg
from .errors import (
    AlgebraValidationError,
    BadIdempotents,
    BadUnit,
    NotAssociative,
    NotDirectSum,
    NotInRadical,
    NotInvertible,
    RadicalNotNilpotent,
    SNotCommutative,
    SpaceTooLarge,
)
from .fields import FieldSpec, field_make

DEFAULT_SPACE_BOUND = 2 ** 20
ORBIT_VERIFY_TRIPLES = 100


@dataclass(frozen=True)
class Block:
    idempotent: tuple[int, ...]
    degree: int
    basis: tuple[int, ...]


@dataclass(frozen=True)
class TildeTriple:
    """A triple (t, a, b) with cached inverses; t in H, a and b in N = 1 + J."""
    t: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    t_inv: tuple[int, ...]
    a_inv: tuple[int, ...]
    b_inv: tuple[int, ...]


@dataclass(frozen=True)
class OrbitRecord:
    members: frozenset
    representative: tuple
    space_tag: str  # "J", "J*", or "G"


class AlgebraSpec:
    """A finite-dimensional algebra given by structure constants.

    Construct raw, then call validate_algebra() before using anything beyond
    the plain linear/multiplicative helpers.
    """

    def __init__(self, field: FieldSpec, dim: int, mul_entries, unit, blocks, radical_basis):
        self.field = field
        self.dim = dim
        self.unit = tuple(unit)
        self.blocks = tuple(blocks)
        self.radical_basis = tuple(radical_basis)
        self.nilpotency_class = None
        # dense structure tensor from sparse entries [i, j, [(l, c), ...]]
        table = [[tuple([0] * dim) for _ in range(dim)] for _ in range(dim)]
        for i, j, terms in mul_entries:
            vec = [0] * dim
            for l, c in terms:
                vec[l] = c % field.p if field.k == 1 else c
            table[i][j] = tuple(vec)
        self.mul_table = tuple(tuple(row) for row in table)
        self._sparse = tuple(
            tuple(tuple((l, v) for l, v in enumerate(cell) if v) for cell in row)
            for row in self.mul_table
        )
        self._inv_cache: dict = {}
        self._validated = False

    # -- linear helpers --------------------------------------------------

    def zero(self):
        return tuple([0] * self.dim)

    def basis_vec(self, i):
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def add(self, x, y):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def smul(self, c, x):
        F = self.field
        return tuple(F.mul(c, a) for a in x)

    def mul(self, x, y):
        F = self.field
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._sparse[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = F.mul(xi, yj)
                for l, v in row[j]:
                    out[l] = F.add(out[l], F.mul(c, v))
        return tuple(out)

    def mul_many(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    # -- S / J split -------------------------------------------------------

    @property
    def s_basis(self):
        return tuple(i for b in self.blocks for i in b.basis)

    def s_part(self, x):
        rad = set(self.radical_basis)
        return tuple(0 if i in rad else v for i, v in enumerate(x))

    def j_part(self, x):
        rad = set(self.radical_basis)
        return tuple(v if i in rad else 0 for i, v in enumerate(x))

    def in_radical(self, x):
        rad = set(self.radical_basis)
        return all(v == 0 for i, v in enumerate(x) if i not in rad)

    def j_coords(self, x):
        """Project onto the radical coordinates (a DualForm-shaped tuple)."""
        return tuple(x[i] for i in self.radical_basis)

    def j_embed(self, coords):
        vec = [0] * self.dim
        for i, c in zip(self.radical_basis, coords):
            vec[i] = c
        return tuple(vec)

    def j_vectors(self):
        """All elements of J as full-dimension vectors, lexicographic order."""
        F = self.field
        coords_list = [()]
        for _ in self.radical_basis:
            coords_list = [c + (v,) for c in coords_list for v in range(F.q)]
        return [self.j_embed(c) for c in coords_list]

    def dual_vectors(self):
        F = self.field
        out = [()]
        for _ in self.radical_basis:
            out = [c + (v,) for c in out for v in range(F.q)]
        return out

    # -- inversion ---------------------------------------------------------

    def invert(self, g):
        """Inverse via a d x d linear solve; raises NotInvertible."""
        if g in self._inv_cache:
            return self._inv_cache[g]
        cols = [self.mul(g, self.basis_vec(j)) for j in range(self.dim)]
        rows = [[cols[j][l] for j in range(self.dim)] for l in range(self.dim)]
        y = linalg.solve(self.field, rows, list(self.unit))
        if y is None or self.mul(y, g) != self.unit:
            raise NotInvertible(f"element {g} is not invertible")
        self._inv_cache[g] = y
        return y

    # -- forms ---------------------------------------------------------------

    def form_eval(self, lam, x):
        """lambda(x); only the J-component of x contributes."""
        F = self.field
        out = 0
        for c, i in zip(lam, self.radical_basis):
            if c and x[i]:
                out = F.add(out, F.mul(c, x[i]))
        return out


def make_triple(spec: AlgebraSpec, t, a, b) -> TildeTriple:
    return TildeTriple(t, a, b, spec.invert(t), spec.invert(a), spec.invert(b))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_algebra(spec: AlgebraSpec) -> AlgebraSpec:
    """Check every standing hypothesis on the input algebra; errors cite paths."""
    F = spec.field
    d = spec.dim

    block_idx = [i for b in spec.blocks for i in b.basis]
    if sorted(block_idx + list(spec.radical_basis)) != list(range(d)):
        raise NotDirectSum(
            "blocks[*].basis and radical_basis must partition the basis indices 0..dim-1"
        )

    basis = [spec.basis_vec(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            for l in range(d):
                left = spec.mul(spec.mul_table[i][j], basis[l])
                right = spec.mul(basis[i], spec.mul_table[j][l])
                if left != right:
                    raise NotAssociative(f"mul: (b{i}*b{j})*b{l} != b{i}*(b{j}*b{l})")

    for i in range(d):
        if spec.mul(spec.unit, basis[i]) != basis[i] or spec.mul(basis[i], spec.unit) != basis[i]:
            raise BadUnit(f"unit: not a two-sided identity on basis index {i}")

    idems = [b.idempotent for b in spec.blocks]
    total = spec.zero()
    for bi, e in enumerate(idems):
        total = spec.add(total, e)
        for bj, f in enumerate(idems):
            prod = spec.mul(e, f)
            want = e if bi == bj else spec.zero()
            if prod != want:
                raise BadIdempotents(f"blocks[{bi}].idempotent * blocks[{bj}].idempotent wrong")
    if total != spec.unit:
        raise BadIdempotents("blocks[*].idempotent do not sum to the unit")

    s_idx = spec.s_basis
    for i in s_idx:
        for j in s_idx:
            if spec.mul(basis[i], basis[j]) != spec.mul(basis[j], basis[i]):
                raise SNotCommutative(f"blocks: basis {i} and {j} do not commute")

    rad = set(spec.radical_basis)
    for bi, blk in enumerate(spec.blocks):
        sub = list(blk.basis)
        # closure of the block span under multiplication
        for i in sub:
            for j in sub:
                prod = spec.mul(basis[i], basis[j])
                if any(v and l not in sub for l, v in enumerate(prod)):
                    raise BadIdempotents(f"blocks[{bi}]: span not closed under multiplication")
        for i in sub:
            if spec.mul(blk.idempotent, basis[i]) != basis[i] or \
               spec.mul(basis[i], blk.idempotent) != basis[i]:
                raise BadIdempotents(f"blocks[{bi}]: idempotent is not a unit of the block")
        # every nonzero block element must be invertible inside the block
        for z in _span_vectors(spec, sub):
            if z == spec.zero():
                continue
            rows = [[spec.mul(z, basis[j])[l] for j in sub] for l in sub]
            rhs = [blk.idempotent[l] for l in sub]
            if linalg.solve(F, rows, rhs) is None:
                raise BadIdempotents(f"blocks[{bi}]: span is not a field (no inverse for {z})")

    # SJ, JS, JJ land in J
    for i in range(d):
        for j in spec.radical_basis:
            for prod, path in ((spec.mul(basis[i], basis[j]), f"b{i}*b{j}"),
                               (spec.mul(basis[j], basis[i]), f"b{j}*b{i}")):
                if any(v and l not in rad for l, v in enumerate(prod)):
                    raise RadicalNotNilpotent(f"radical_basis: {path} leaves J")

    # nilpotency class by iterating spans of J^k
    j_basis = [basis[i] for i in spec.radical_basis]
    power = j_basis
    k = 1
    while power:
        if k > d + 1:
            raise RadicalNotNilpotent("radical_basis: J is not nilpotent")
        nxt = []
        for x in power:
            for b in j_basis:
                v = spec.mul(x, b)
                if v != spec.zero():
                    nxt.append(list(v))
        if nxt:
            mat, pivots = linalg.rref(F, nxt)
            nxt = [tuple(mat[r]) for r in range(len(pivots))]
        power = nxt
        k += 1
    spec.nilpotency_class = k

    _build_block_data(spec)
    spec._validated = True
    return spec


def _span_vectors(spec: AlgebraSpec, idx_list):
    """All vectors supported on the given coordinates (full-dim tuples)."""
    F = spec.field
    vecs = [spec.zero()]
    for i in idx_list:
        b = spec.basis_vec(i)
        scaled = [spec.smul(c, b) for c in range(F.q)]
        vecs = [spec.add(v, s) for v in vecs for s in scaled]
    return vecs


def _build_block_data(spec: AlgebraSpec):
    """Per-block unit sets, multiplicative generators and discrete logs."""
    F = spec.field
    spec.block_units = []
    spec.block_gen = []
    spec.block_dlog = []
    for blk in spec.blocks:
        elems = _span_vectors(spec, list(blk.basis))
        units = sorted(z for z in elems if z != spec.zero())
        order = F.q ** blk.degree - 1
        gen = None
        dlog = None
        for cand in units:
            seen = {}
            cur = blk.idempotent
            ok = True
            for e in range(order):
                if cur in seen:
                    ok = False
                    break
                seen[cur] = e
                cur = spec.mul(cur, cand)
            if ok and cur == blk.idempotent and len(seen) == order:
                gen, dlog = cand, seen
                break
        if gen is None:
            raise BadIdempotents("block span has no multiplicative generator")
        spec.block_units.append(tuple(units))
        spec.block_gen.append(gen)
        spec.block_dlog.append(dlog)
    spec.block_orders = tuple(F.q ** b.degree - 1 for b in spec.blocks)
    spec.cyclo_order = lcm(F.p, *[max(o, 1) for o in spec.block_orders])


# ---------------------------------------------------------------------------
# group pieces: H, N, G
# ---------------------------------------------------------------------------

def h_elements(spec: AlgebraSpec):
    """All elements of H = S*, deterministic order."""
    combos = [spec.zero()]
    for units in spec.block_units:
        combos = [spec.add(v, u) for v in combos for u in units]
    return sorted(combos)


def n_elements(spec: AlgebraSpec):
    return [spec.add(spec.unit, x) for x in spec.j_vectors()]


def group_order(spec: AlgebraSpec) -> int:
    n = 1
    for o in spec.block_orders:
        n *= o
    return n * spec.field.q ** len(spec.radical_basis)


def g_elements(spec: AlgebraSpec):
    """All of G = H + J (every h + x with h in H is invertible)."""
    return [spec.add(h, x) for h in h_elements(spec) for x in spec.j_vectors()]


def block_component(spec: AlgebraSpec, x, i: int):
    """e_i x e_i restricted to nothing -- the full-dim projection onto block i."""
    e = spec.blocks[i].idempotent
    return spec.mul(e, spec.mul(x, e))


def associated_support(spec: AlgebraSpec, s) -> frozenset:
    """Blocks on which the S-element s has a nonzero component."""
    return frozenset(
        i for i in range(len(spec.blocks)) if block_component(spec, s, i) != spec.zero()
    )


def idempotent_of(spec: AlgebraSpec, blocks: frozenset):
    e = spec.zero()
    for i in sorted(blocks):
        e = spec.add(e, spec.blocks[i].idempotent)
    return e


# ---------------------------------------------------------------------------
# the triple-group actions
# ---------------------------------------------------------------------------

def rho(spec: AlgebraSpec, tau: TildeTriple, x):
    """rho(tau)(x) = t a x b^{-1} t^{-1} on the radical."""
    if not spec.in_radical(x):
        raise NotInRadical(f"{x} has a nonzero S-component")
    return spec.mul_many(tau.t, tau.a, x, tau.b_inv, tau.t_inv)


def rho_dual(spec: AlgebraSpec, tau: TildeTriple, lam):
    """The dual action: (rho* lam)(x) = lam(a^{-1} t^{-1} x t b)."""
    u = spec.mul(tau.a_inv, tau.t_inv)
    v = spec.mul(tau.t, tau.b)
    out = []
    for i in spec.radical_basis:
        w = spec.mul_many(u, spec.basis_vec(i), v)
        out.append(spec.form_eval(lam, w))
    return tuple(out)


def tilde_generators(spec: AlgebraSpec):
    """Generator triples: block torus generators plus 1 + c*b_i on either side."""
    gens = []
    for i, blk in enumerate(spec.blocks):
        if spec.block_orders[i] > 1:
            t = spec.add(spec.block_gen[i], spec.sub(spec.unit, blk.idempotent))
            gens.append(make_triple(spec, t, spec.unit, spec.unit))
    for r in spec.radical_basis:
        b = spec.basis_vec(r)
        for c in range(1, spec.field.q):
            a = spec.add(spec.unit, spec.smul(c, b))
            gens.append(make_triple(spec, spec.unit, a, spec.unit))
            gens.append(make_triple(spec, spec.unit, spec.unit, a))
    return gens


def random_triple(spec: AlgebraSpec, rng: random.Random) -> TildeTriple:
    t = spec.zero()
    for units in spec.block_units:
        t = spec.add(t, rng.choice(units))
    q = spec.field.q
    a = spec.add(spec.unit, spec.j_embed(tuple(rng.randrange(q) for _ in spec.radical_basis)))
    b = spec.add(spec.unit, spec.j_embed(tuple(rng.randrange(q) for _ in spec.radical_basis)))
    return make_triple(spec, t, a, b)


def orbit(spec: AlgebraSpec, start, action: str, generators=None, verify: bool = True,
          seed: int = 0) -> OrbitRecord:
    """BFS closure of `start` under generator triples (action: "rho" or "rho_dual").

    A finite group is generated by any generating set as a semigroup, so
    applying generators (without inverses) reaches the whole orbit.  Soundness
    of the generator set itself is backed by a random-closure check with full
    triples.
    """
    act = rho if action == "rho" else rho_dual
    if action == "rho":
        start = tuple(start)
    if generators is None:
        generators = tilde_generators(spec)
    members = {start}
    frontier = [start]
    while frontier:
        new = []
        for v in frontier:
            for g in generators:
                w = act(spec, g, v)
                if w not in members:
                    members.add(w)
                    new.append(w)
        frontier = new
    if verify:
        _verify_closure(spec, members, act, seed)
    tag = "J" if action == "rho" else "J*"
    return OrbitRecord(frozenset(members), min(members), tag)


def _verify_closure(spec, members, act, seed, triples: int = ORBIT_VERIFY_TRIPLES):
    rng = random.Random(seed)
    sample = sorted(members)
    if len(sample) > 20:
        sample = rng.sample(sample, 20)
    for _ in range(triples):
        tau = random_triple(spec, rng)
        for v in sample:
            if act(spec, tau, v) not in members:
                raise AssertionError("orbit BFS closure failed under a random full triple")


# ---------------------------------------------------------------------------
# supports and regularity
# ---------------------------------------------------------------------------

def element_support(spec: AlgebraSpec, x) -> frozenset:
    """Minimal block set T with x in J_{e_T} (for x in J)."""
    out = set()
    for i, blk in enumerate(spec.blocks):
        if spec.mul(blk.idempotent, x) != spec.zero() or spec.mul(x, blk.idempotent) != spec.zero():
            out.add(i)
    return frozenset(out)


def form_support(spec: AlgebraSpec, lam) -> frozenset:
    """Minimal block set T with lam in J_{e_T}* (vanishing off e_T J e_T)."""
    out = set()
    for i, blk in enumerate(spec.blocks):
        e = blk.idempotent
        for r in spec.radical_basis:
            b = spec.basis_vec(r)
            if spec.form_eval(lam, spec.mul(e, b)) != 0 or \
               spec.form_eval(lam, spec.mul(b, e)) != 0:
                out.add(i)
                break
    return frozenset(out)


def orbit_support(spec: AlgebraSpec, orb: OrbitRecord) -> frozenset:
    """The unique minimal support over the orbit (Peirce corner the orbit meets)."""
    supp = element_support if orb.space_tag == "J" else form_support
    supports = {supp(spec, v) for v in orb.members}
    minimal = [t for t in supports if not any(u < t for u in supports)]
    if len(minimal) != 1:
        raise AssertionError(f"orbit support is not unique: {sorted(map(sorted, minimal))}")
    return minimal[0]


def support_idempotent(spec: AlgebraSpec, orb: OrbitRecord):
    """The minimal idempotent e with orb meeting J_e, plus a witness member."""
    T = orbit_support(spec, orb)
    supp = element_support if orb.space_tag == "J" else form_support
    witness = min(v for v in orb.members if supp(spec, v) <= T)
    return idempotent_of(spec, T), T, witness


def is_singular(spec: AlgebraSpec, v, is_form: bool = False) -> bool:
    """Annihilator criterion: singular iff some c in A \\ J kills v on both sides."""
    F = spec.field
    d = spec.dim
    basis = [spec.basis_vec(i) for i in range(d)]
    rows = []
    if not is_form:
        for l in range(d):
            rows.append([spec.mul(basis[j], v)[l] for j in range(d)])
        for l in range(d):
            rows.append([spec.mul(v, basis[j])[l] for j in range(d)])
    else:
        for r in spec.radical_basis:
            x = basis[r]
            rows.append([spec.form_eval(v, spec.mul(x, basis[j])) for j in range(d)])
            rows.append([spec.form_eval(v, spec.mul(basis[j], x)) for j in range(d)])
    full_dim = len(linalg.kernel_basis(F, rows))
    rad = list(spec.radical_basis)
    sub_rows = [[row[j] for j in rad] for row in rows]
    rad_dim = len(linalg.kernel_basis(F, sub_rows))
    return full_dim > rad_dim


# ---------------------------------------------------------------------------
# subalgebra (corner) orbits, via embedded generators of G~_e
# ---------------------------------------------------------------------------

def corner_j_basis(spec: AlgebraSpec, T: frozenset):
    """An independent set of projections e b_r e spanning J_e (full-dim vectors)."""
    e = idempotent_of(spec, T)
    rows = []
    for r in spec.radical_basis:
        v = spec.mul(e, spec.mul(spec.basis_vec(r), e))
        if v != spec.zero():
            rows.append(list(v))
    if not rows:
        return []
    mat, pivots = linalg.rref(spec.field, rows)
    return [tuple(mat[i]) for i in range(len(pivots))]


def corner_generators(spec: AlgebraSpec, T: frozenset):
    """Generator triples of G~_e embedded in G~ (identity off the corner)."""
    gens = []
    for i in sorted(T):
        if spec.block_orders[i] > 1:
            t = spec.add(spec.block_gen[i],
                         spec.sub(spec.unit, spec.blocks[i].idempotent))
            gens.append(make_triple(spec, t, spec.unit, spec.unit))
    for b in corner_j_basis(spec, T):
        for c in range(1, spec.field.q):
            a = spec.add(spec.unit, spec.smul(c, b))
            gens.append(make_triple(spec, spec.unit, a, spec.unit))
            gens.append(make_triple(spec, spec.unit, spec.unit, a))
    return gens


def corner_orbit(spec: AlgebraSpec, T: frozenset, start, action: str) -> OrbitRecord:
    """The G~_e-orbit of an element/form of the corner J_e, e = e_T."""
    return orbit(spec, start, action, generators=corner_generators(spec, T), verify=False)


# ---------------------------------------------------------------------------
# censuses
# ---------------------------------------------------------------------------

@dataclass
class OrbitCensus:
    space: str
    orbits: list
    supports: list          # frozenset per orbit, aligned with orbits
    n: int
    n_e: int
    n_sub: dict             # frozenset T -> n(J_{e_T})
    residual: int


def orbit_census(spec: AlgebraSpec, space: str = "J",
                 bound: int = DEFAULT_SPACE_BOUND) -> OrbitCensus:
    """Partition J (or J*) into triple-group orbits and classify by support."""
    F = spec.field
    size = F.q ** len(spec.radical_basis)
    if size > bound:
        raise SpaceTooLarge(f"|{space}| = {size} exceeds bound {bound}")
    action = "rho" if space == "J" else "rho_dual"
    vectors = spec.j_vectors() if space == "J" else spec.dual_vectors()
    gens = tilde_generators(spec)
    seen = set()
    orbits = []
    for v in vectors:
        if v in seen:
            continue
        orb = orbit(spec, v, action, generators=gens)
        seen |= orb.members
        orbits.append(orb)
    assert len(seen) == size, "orbits do not partition the space"
    orbits.sort(key=lambda o: o.representative)
    supports = [orbit_support(spec, o) for o in orbits]

    nb = len(spec.blocks)
    all_blocks = frozenset(range(nb))
    n_sub = {}
    for mask in range(2 ** nb):
        T = frozenset(i for i in range(nb) if mask >> i & 1)
        n_sub[T] = sum(1 for s in supports if s <= T)
    n_e = sum(1 for s in supports if s == all_blocks)
    # inclusion-exclusion over the singular strata J_{prod e'_i}
    signed = 0
    for mask in range(2 ** nb):
        T = frozenset(i for i in range(nb) if mask >> i & 1)
        signed += (-1) ** len(T) * n_sub[all_blocks - T]
    residual = n_e - signed
    return OrbitCensus(space, orbits, supports, len(orbits), n_e, n_sub, residual)


def regular_orbit_counts(census: OrbitCensus) -> dict:
    """n_E(J_{e_T}) for every T: orbits whose minimal support is exactly T."""
    out = {}
    for s in census.supports:
        out[s] = out.get(s, 0) + 1
    return out


# ---------------------------------------------------------------------------
# JSON input
# ---------------------------------------------------------------------------

def _coeff(field: FieldSpec, raw, path: str) -> int:
    if isinstance(raw, int):
        if field.k == 1:
            return raw % field.p
        return raw % field.q
    if isinstance(raw, list):
        return field.encode(raw)
    raise AlgebraValidationError(f"{path}: bad coefficient {raw!r}")


def load_algebra(data: dict) -> AlgebraSpec:
    """Build and validate an AlgebraSpec from the JSON schema."""
    field = field_make(data["p"], data.get("k", 1))
    dim = data["dim"]
    unit = [_coeff(field, c, f"unit[{i}]") for i, c in enumerate(data["unit"])]
    entries = []
    for idx, ent in enumerate(data["mul"]):
        i, j, terms = ent
        entries.append((i, j, [(l, _coeff(field, c, f"mul[{idx}]")) for l, c in terms]))
    blocks = []
    for bi, blk in enumerate(data["blocks"]):
        idem = tuple(_coeff(field, c, f"blocks[{bi}].idempotent[{i}]")
                     for i, c in enumerate(blk["idempotent"]))
        blocks.append(Block(idem, blk["degree"], tuple(blk["basis"])))
    spec = AlgebraSpec(field, dim, entries, unit, blocks, data["radical_basis"])
    return validate_algebra(spec)


def load_algebra_file(path: str) -> AlgebraSpec:
    with open(path) as fh:
        return load_algebra(json.load(fh))
