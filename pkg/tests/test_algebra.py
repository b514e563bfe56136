import copy
import json
import os
import random

import pytest

from supchar.algebra import (
    AlgebraSpec,
    Block,
    corner_orbit,
    g_elements,
    group_order,
    is_singular,
    load_algebra,
    load_algebra_file,
    make_triple,
    orbit,
    orbit_census,
    orbit_support,
    random_triple,
    rho,
    rho_dual,
    support_idempotent,
    tilde_generators,
    validate_algebra,
)
from supchar.errors import (
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
from supchar import triangular as tri

from conftest import get_field, get_spec

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "supchar", "data")


def root_index(n, i, j):
    roots = tri.positive_roots(n)
    return n + roots.index((i, j))


def basis_vec(spec, i):
    return spec.basis_vec(i)


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def test_triangular_dimensions():
    s2 = get_spec(2, 2)
    assert s2.dim == 3 and s2.nilpotency_class == 2
    s4 = get_spec(4, 2)
    assert s4.dim == 10 and s4.nilpotency_class == 4


def test_matrix_unit_products():
    s = get_spec(3, 2)
    e12 = basis_vec(s, root_index(3, 1, 2))
    e23 = basis_vec(s, root_index(3, 2, 3))
    e13 = basis_vec(s, root_index(3, 1, 3))
    assert s.mul(e12, e23) == e13
    assert s.mul(e12, e12) == s.zero()
    assert s.mul(s.unit, e12) == e12


def dual_numbers_raw(q=3):
    F = get_field(q)
    entries = [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)])]
    return AlgebraSpec(F, 2, entries, [1, 0],
                       [Block((1, 0), 1, (0,))], (1,))


def test_validate_dual_numbers():
    spec = validate_algebra(dual_numbers_raw())
    assert spec.nilpotency_class == 2
    assert group_order(spec) == 6


def test_not_associative():
    F = get_field(2)
    # u*u = 1 breaks associativity against the unit row? make a genuinely
    # non-associative product: u*u = u with u*1 = u forces (uu)u=u=u(uu), so
    # instead set b1*b1 = 1 and b1 in radical: (b1 b1) b1 = b1, fine too.
    # Use a 3-dim algebra where (b2 b2) b2 != b2 (b2 b2).
    entries = [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)]),
               (0, 2, [(2, 1)]), (2, 0, [(2, 1)]),
               (1, 1, [(2, 1)]), (1, 2, []), (2, 1, [(1, 1)]), (2, 2, [])]
    raw = AlgebraSpec(F, 3, entries, [1, 0, 0], [Block((1, 0, 0), 1, (0,))], (1, 2))
    with pytest.raises(NotAssociative):
        validate_algebra(raw)


def test_bad_unit():
    F = get_field(3)
    entries = [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)])]
    raw = AlgebraSpec(F, 2, entries, [1, 1], [Block((1, 0), 1, (0,))], (1,))
    with pytest.raises(BadUnit):
        validate_algebra(raw)


def test_radical_not_nilpotent():
    F = get_field(3)
    # u * u = u: an idempotent hiding in the radical
    entries = [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)]),
               (1, 1, [(1, 1)])]
    raw = AlgebraSpec(F, 2, entries, [1, 0], [Block((1, 0), 1, (0,))], (1,))
    with pytest.raises(RadicalNotNilpotent):
        validate_algebra(raw)


def test_s_not_commutative():
    F = get_field(2)
    # full 2x2 matrix algebra passed off as a single "block"
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    entries = []
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            entries.append((i, j, [(idx[(a, d)], 1)] if b == c else []))
    raw = AlgebraSpec(F, 4, entries, [1, 0, 0, 1],
                      [Block((1, 0, 0, 1), 2, (0, 1, 2, 3))], ())
    with pytest.raises(SNotCommutative):
        validate_algebra(raw)


def test_not_direct_sum():
    F = get_field(2)
    entries = [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)])]
    raw = AlgebraSpec(F, 2, entries, [1, 0], [Block((1, 0), 1, (0,))], (0, 1))
    with pytest.raises(NotDirectSum):
        validate_algebra(raw)


def test_block_span_must_be_a_field():
    F = get_field(3)
    # GF(3) x GF(3) declared as a single block: (1,0) has no inverse
    entries = [(0, 0, [(0, 1)]), (1, 1, [(1, 1)])]
    raw = AlgebraSpec(F, 2, entries, [1, 1], [Block((1, 1), 1, (0, 1))], ())
    with pytest.raises(BadIdempotents):
        validate_algebra(raw)


def test_gf4_block_torus():
    """A block that is a genuine quadratic extension: A = GF(4) (+) 0."""
    F = get_field(2, 2)
    spec = get_spec(2, 2, 2)
    assert spec.block_orders == (3, 3)
    assert group_order(spec) == 36
    assert spec.cyclo_order == 6


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

def test_invert_examples():
    s = get_spec(2, 3)
    e12 = basis_vec(s, 2)
    one_plus = s.add(s.unit, e12)
    assert s.invert(one_plus) == s.sub(s.unit, e12)
    diag21 = (2, 1, 0)
    assert s.invert(diag21) == diag21
    assert s.invert(s.unit) == s.unit
    with pytest.raises(NotInvertible):
        s.invert(s.zero())
    with pytest.raises(NotInvertible):
        s.invert(e12)


def test_invert_whole_group():
    s = get_spec(2, 3)
    for g in g_elements(s):
        ginv = s.invert(g)
        assert s.mul(g, ginv) == s.unit
        assert s.mul(ginv, g) == s.unit


# ---------------------------------------------------------------------------
# the actions rho and rho_dual
# ---------------------------------------------------------------------------

def test_rho_identity_triple():
    s = get_spec(3, 2)
    tau = make_triple(s, s.unit, s.unit, s.unit)
    for x in s.j_vectors():
        assert rho(s, tau, x) == x
    for lam in s.dual_vectors():
        assert rho_dual(s, tau, lam) == lam


def test_rho_torus_scaling():
    s = get_spec(2, 3)
    t = (2, 1, 0)
    tau = make_triple(s, t, s.unit, s.unit)
    e12 = basis_vec(s, 2)
    # t1 * t2^{-1} = 2 * 1 = 2
    assert rho(s, tau, e12) == s.smul(2, e12)


def test_rho_unipotent():
    s = get_spec(3, 2)
    e12 = basis_vec(s, root_index(3, 1, 2))
    e23 = basis_vec(s, root_index(3, 2, 3))
    e13 = basis_vec(s, root_index(3, 1, 3))
    tau = make_triple(s, s.unit, s.add(s.unit, e12), s.unit)
    assert rho(s, tau, e23) == s.add(e23, e13)


def test_rho_rejects_s_component():
    s = get_spec(2, 2)
    tau = make_triple(s, s.unit, s.unit, s.unit)
    with pytest.raises(NotInRadical):
        rho(s, tau, s.unit)


def _triple_product(s, t1, t2):
    # (t1 t2, t2^{-1} a1 t2 a2, t2^{-1} b1 b2 ... ) per the group law
    t = s.mul(t1.t, t2.t)
    a = s.mul_many(t2.t_inv, t1.a, t2.t, t2.a)
    b = s.mul_many(t2.t_inv, t1.b, t2.t, t2.b)
    return make_triple(s, t, a, b)


@pytest.mark.parametrize("n,p,k", [(2, 3, 1), (3, 2, 1), (2, 2, 2)])
def test_rho_is_a_group_action(n, p, k):
    s = get_spec(n, p, k)
    rng = random.Random(5)
    xs = s.j_vectors()
    lams = s.dual_vectors()
    for _ in range(1000):
        t1 = random_triple(s, rng)
        t2 = random_triple(s, rng)
        prod = _triple_product(s, t1, t2)
        x = rng.choice(xs)
        assert rho(s, prod, x) == rho(s, t1, rho(s, t2, x))
        lam = rng.choice(lams)
        assert rho_dual(s, prod, lam) == rho_dual(s, t1, rho_dual(s, t2, lam))


def test_rho_dual_pairing():
    """<rho*(tau) lam, rho(tau) x> = <lam, x> for all tau sampled."""
    s = get_spec(3, 2)
    rng = random.Random(9)
    for _ in range(200):
        tau = random_triple(s, rng)
        for x in s.j_vectors():
            lam = tuple(rng.randrange(2) for _ in s.radical_basis)
            lhs = s.form_eval(rho_dual(s, tau, lam), s.j_embed(s.j_coords(rho(s, tau, x))))
            assert lhs == s.form_eval(lam, x)


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

def test_orbit_of_zero():
    s = get_spec(2, 2)
    assert orbit(s, s.zero(), "rho").members == {s.zero()}


def test_orbit_examples():
    s22 = get_spec(2, 2)
    e12 = basis_vec(s22, 2)
    assert orbit(s22, e12, "rho").members == {e12}
    s23 = get_spec(2, 3)
    e12 = basis_vec(s23, 2)
    got = orbit(s23, e12, "rho").members
    assert got == {e12, s23.smul(2, e12)}


def test_orbit_representative_is_minimal():
    s = get_spec(3, 3)
    census = orbit_census(s, "J")
    for orb in census.orbits:
        assert orb.representative == min(orb.members)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_census_partitions_and_matches_dual(n, p):
    s = get_spec(n, p)
    cj = orbit_census(s, "J")
    cd = orbit_census(s, "J*")
    q = p
    assert sum(len(o.members) for o in cj.orbits) == q ** len(s.radical_basis)
    assert sum(len(o.members) for o in cd.orbits) == q ** len(s.radical_basis)
    assert cj.n_e == cd.n_e
    assert cj.residual == 0 and cd.residual == 0


def test_census_anchors():
    c = orbit_census(get_spec(2, 2), "J")
    assert c.n == 2 and c.n_e == 1
    c = orbit_census(get_spec(2, 3), "J")
    assert c.n == 2 and c.n_e == 1


def test_census_bound():
    with pytest.raises(SpaceTooLarge):
        orbit_census(get_spec(4, 3), "J", bound=100)


@pytest.mark.parametrize("n,p", [(2, 3), (3, 2), (3, 3)])
def test_singularity_constant_on_orbits(n, p):
    s = get_spec(n, p)
    for space, form in (("J", False), ("J*", True)):
        for orb in orbit_census(s, space).orbits:
            vals = {is_singular(s, v, form) for v in orb.members}
            assert len(vals) == 1


def test_singularity_examples():
    s = get_spec(3, 2)
    assert is_singular(s, s.zero())
    e13 = basis_vec(s, root_index(3, 1, 3))
    assert is_singular(s, e13)
    e12_plus_e23 = s.add(basis_vec(s, root_index(3, 1, 2)),
                         basis_vec(s, root_index(3, 2, 3)))
    assert not is_singular(s, e12_plus_e23)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_annihilator_agrees_with_combinatorial_regularity(n, p):
    s = get_spec(n, p)
    for d in tri.basic_subsets(n):
        want_regular = tri.is_regular_D(d, n)
        x = tri.x_D(s, n, d)
        lam = tri.lambda_D(n, d)
        assert is_singular(s, x) == (not want_regular)
        assert is_singular(s, lam, True) == (not want_regular)


def test_support_idempotent_examples():
    s = get_spec(3, 2)
    e13 = basis_vec(s, root_index(3, 1, 3))
    orb = orbit(s, e13, "rho")
    e, T, witness = support_idempotent(s, orb)
    assert T == frozenset({0, 2})
    assert e == (1, 0, 1) + (0,) * 3
    assert witness in orb.members


def test_support_set_closed_under_meet():
    """The idempotents whose corner meets an orbit form a meet-closed family
    with a unique minimum."""
    s = get_spec(3, 3)
    census = orbit_census(s, "J")
    nb = len(s.blocks)
    for orb in census.orbits:
        from supchar.algebra import element_support
        hit = set()
        for mask in range(2 ** nb):
            T = frozenset(i for i in range(nb) if mask >> i & 1)
            if any(element_support(s, v) <= T for v in orb.members):
                hit.add(T)
        for a in hit:
            for b in hit:
                assert (a & b) in hit
        assert min(hit, key=len) == orbit_support(s, orb)


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3)])
def test_corner_restriction_is_regular(n, p):
    s = get_spec(n, p)
    for space in ("J", "J*"):
        census = orbit_census(s, space)
        for orb, T in zip(census.orbits, census.supports):
            if not T:
                continue
            _, _, witness = support_idempotent(s, orb)
            sub = corner_orbit(s, T, witness, "rho" if space == "J" else "rho_dual")
            assert orbit_support(s, sub) == T
            assert sub.members <= orb.members


# ---------------------------------------------------------------------------
# JSON input
# ---------------------------------------------------------------------------

def test_load_bundled_specs():
    dual = load_algebra_file(os.path.join(DATA, "dual_numbers_q3.json"))
    assert group_order(dual) == 6
    t23 = load_algebra_file(os.path.join(DATA, "triangular_2_3.json"))
    assert group_order(t23) == 12


def test_load_error_cites_path():
    with open(os.path.join(DATA, "dual_numbers_q3.json")) as fh:
        data = json.load(fh)
    bad = copy.deepcopy(data)
    bad["mul"][0][2] = [[0, "x"]]
    with pytest.raises(AlgebraValidationError, match="mul"):
        load_algebra(bad)


def test_generator_closure_sanity():
    s = get_spec(3, 3)
    gens = tilde_generators(s)
    # torus generators for each block plus two one-parameter families per
    # radical basis vector and nonzero scalar
    assert len(gens) == 3 + 2 * 3 * 2
