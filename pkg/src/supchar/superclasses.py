"""The triple-group action on G, the superclass partition, and quadruple labels."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    AlgebraSpec,
    OrbitRecord,
    TildeTriple,
    associated_support,
    block_component,
    corner_orbit,
    element_support,
    g_elements,
    group_order,
    idempotent_of,
    orbit_support,
    random_triple,
    regular_orbit_counts,
    tilde_generators,
)
from .errors import GroupTooLarge, NotInH, ReductionFailed

DEFAULT_GROUP_BOUND = 2 ** 17


@dataclass(frozen=True)
class SuperclassLabel:
    e: frozenset            # block indices of the regular-orbit corner
    f: frozenset            # blocks where the H-part differs from 1
    h: tuple                # the common S-component of the class
    omega_rep: tuple        # canonical representative of the corner orbit

    def sort_key(self):
        return (tuple(sorted(self.e)), tuple(sorted(self.f)), self.h, self.omega_rep)

    def render(self) -> str:
        e = ",".join(str(i + 1) for i in sorted(self.e))
        f = ",".join(str(i + 1) for i in sorted(self.f))
        return f"e={{{e}}};f={{{f}}};h={list(self.h)};w={list(self.omega_rep)}"


@dataclass(frozen=True)
class SuperclassRecord:
    label: SuperclassLabel
    members: frozenset
    representative: tuple

    @property
    def size(self) -> int:
        return len(self.members)


def r_act(spec: AlgebraSpec, tau: TildeTriple, g):
    """R_tau(g) = 1 + t a (g - 1) b^{-1} t^{-1}."""
    core = spec.mul_many(tau.t, tau.a, spec.sub(g, spec.unit), tau.b_inv, tau.t_inv)
    return spec.add(spec.unit, core)


def associated_idempotent(spec: AlgebraSpec, h) -> frozenset:
    """Blocks on which h - 1 is nonzero; requires h in H."""
    if not all(v == 0 for v in spec.j_part(h)) or spec.s_part(h) != h:
        raise NotInH(f"{h} has a nonzero radical component")
    for i in range(len(spec.blocks)):
        if block_component(spec, h, i) == spec.zero():
            raise NotInH(f"{h} is not invertible on block {i}")
    return associated_support(spec, spec.sub(h, spec.unit))


def classify(spec: AlgebraSpec, members) -> SuperclassLabel:
    """Quadruple label of a superclass, via the constructive two-step reduction."""
    g = min(members)
    h = spec.s_part(g)
    x = spec.j_part(g)
    fset = associated_idempotent(spec, h)
    f = idempotent_of(spec, fset)

    if x == spec.zero():
        y = spec.zero()
    else:
        # unit u of S with h - 1 = u f; conjugate the f-reduction through it
        s = spec.sub(h, spec.unit)
        u = spec.add(spec.mul(f, spec.mul(s, f)), spec.sub(spec.unit, f))
        x1 = spec.mul(spec.invert(u), x)
        a = spec.invert(spec.add(spec.unit, x1))
        u2 = spec.sub(spec.mul(a, spec.add(f, x1)), f)
        if spec.mul(u2, f) != spec.zero():
            raise ReductionFailed("left reduction did not kill the f-column")
        y1 = spec.mul(spec.sub(spec.unit, f), u2)
        y = spec.mul(u, y1)
        if spec.mul(f, y) != spec.zero() or spec.mul(y, f) != spec.zero():
            raise ReductionFailed("reduced part is not in the f' corner")
        if spec.add(h, y) not in members:
            raise ReductionFailed("reduced element left the superclass")

    fprime = frozenset(range(len(spec.blocks))) - fset
    orb = corner_orbit(spec, fprime, y, "rho")
    T = orbit_support(spec, orb)
    omega_rep = min(v for v in orb.members if element_support(spec, v) <= T)
    if spec.add(h, omega_rep) not in members:
        raise ReductionFailed("canonical corner representative left the superclass")
    return SuperclassLabel(T, fset, h, omega_rep)


def superclass_partition(spec: AlgebraSpec, bound: int = DEFAULT_GROUP_BOUND,
                         verify: bool = True, seed: int = 0):
    """All superclasses, labeled and sorted by representative."""
    size = group_order(spec)
    if size > bound:
        raise GroupTooLarge(f"|G| = {size} exceeds bound {bound}")
    gens = tilde_generators(spec)
    seen = set()
    classes = []
    for g in g_elements(spec):
        if g in seen:
            continue
        members = {g}
        frontier = [g]
        while frontier:
            new = []
            for v in frontier:
                for tau in gens:
                    w = r_act(spec, tau, v)
                    if w not in members:
                        members.add(w)
                        new.append(w)
            frontier = new
        seen |= members
        classes.append(members)
    assert len(seen) == size, "superclasses do not partition G"
    if verify:
        rng = random.Random(seed)
        for members in classes:
            sample = sorted(members)
            if len(sample) > 10:
                sample = rng.sample(sample, 10)
            for _ in range(25):
                tau = random_triple(spec, rng)
                for v in sample:
                    if r_act(spec, tau, v) not in members:
                        raise AssertionError("superclass BFS closure failed")
    records = [SuperclassRecord(classify(spec, m), frozenset(m), min(m)) for m in classes]
    records.sort(key=lambda r: r.representative)
    labels = {r.label for r in records}
    assert len(labels) == len(records), "distinct superclasses share a label"
    return records


def identity_index(spec: AlgebraSpec, partition) -> int:
    for i, rec in enumerate(partition):
        if spec.unit in rec.members:
            return i
    raise AssertionError("no superclass contains the identity")


def m_factor(spec: AlgebraSpec, fset: frozenset) -> int:
    """Number of H-parts (or torus characters) associated with f: prod (|H_i| - 1)."""
    out = 1
    for i in fset:
        out *= spec.block_orders[i] - 1
    return out


def predicted_count(spec: AlgebraSpec, census) -> int:
    """Superclass count from the orbit census: sum over e _|_ f of n_E(J_e) m(f)."""
    n_e = regular_orbit_counts(census)
    nb = len(spec.blocks)
    total = 0
    for emask in range(2 ** nb):
        T = frozenset(i for i in range(nb) if emask >> i & 1)
        if T not in n_e:
            continue
        rest = [i for i in range(nb) if i not in T]
        for fmask in range(2 ** len(rest)):
            U = frozenset(rest[i] for i in range(len(rest)) if fmask >> i & 1)
            total += n_e[T] * m_factor(spec, U)
    return total


def conjugacy_classes(spec: AlgebraSpec, bound: int = DEFAULT_GROUP_BOUND):
    """Ordinary conjugacy classes of G, by exhaustive conjugation."""
    size = group_order(spec)
    if size > bound:
        raise GroupTooLarge(f"|G| = {size} exceeds bound {bound}")
    gl = g_elements(spec)
    inverses = {g: spec.invert(g) for g in gl}
    seen = set()
    classes = []
    for g in gl:
        if g in seen:
            continue
        cls = {spec.mul_many(s, g, inverses[s]) for s in gl}
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def partition_to_json(spec: AlgebraSpec, partition) -> list:
    out = []
    for rec in partition:
        lbl = rec.label
        h_blocks = [[rec.label.h[i] for i in blk.basis] for blk in spec.blocks]
        out.append({
            "label": {
                "e": sorted(lbl.e),
                "f": sorted(lbl.f),
                "h": h_blocks,
                "omega_rep": list(lbl.omega_rep),
            },
            "size": rec.size,
            "representative": list(rec.representative),
        })
    return out
