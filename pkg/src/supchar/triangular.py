"""The triangular group T(n, F_q): closed-form supercharacter table and the
brute-force construction it is checked against."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import lcm

from . import linalg
from .algebra import AlgebraSpec, Block, validate_algebra
from .cyclo import CycloNumber
from .errors import BadSize
from .fields import FieldSpec, field_make
from .superclasses import DEFAULT_GROUP_BOUND, superclass_partition
from .supercharacters import (
    CharacterTable,
    SupercharLabel,
    build_table,
)


@dataclass(frozen=True, order=True)
class Root:
    row: int    # 1-based
    col: int

    def __post_init__(self):
        if not 1 <= self.row < self.col:
            raise BadSize(f"root ({self.row},{self.col}) needs 1 <= row < col")

    def render(self):
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class BasicSubset:
    roots: tuple[Root, ...]

    def __post_init__(self):
        rows = [r.row for r in self.roots]
        cols = [r.col for r in self.roots]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise BadSize("basic subset has two roots in one row or column")
        object.__setattr__(self, "roots", tuple(sorted(self.roots)))

    def rowcol(self) -> frozenset:
        return frozenset(r.row for r in self.roots) | frozenset(r.col for r in self.roots)

    def sort_key(self):
        return (len(self.roots), tuple((r.row, r.col) for r in self.roots))

    def render(self):
        return "{" + ",".join(r.render() for r in self.roots) + "}"


@dataclass(frozen=True)
class TriSuperclassLabel:
    h: tuple[int, ...]          # diagonal entries, field encodings
    dprime: BasicSubset

    def sort_key(self):
        return (self.dprime.sort_key(), self.h)

    def render(self):
        return f"h={list(self.h)};D'={self.dprime.render()}"


@dataclass(frozen=True)
class TriSupercharLabel:
    c: tuple[int, ...]          # torus character exponents mod q-1
    d: BasicSubset

    def sort_key(self):
        return (self.d.sort_key(), self.c)

    def render(self):
        return f"c={list(self.c)};D={self.d.render()}"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def positive_roots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def make_triangular(n: int, field: FieldSpec) -> AlgebraSpec:
    """The algebra of upper triangular n x n matrices over GF(q), validated."""
    if n < 2:
        raise BadSize(f"triangular algebra needs n >= 2, got {n}")
    roots = positive_roots(n)
    # basis: E_11..E_nn then E_ij by lex root order
    pairs = [(i, i) for i in range(1, n + 1)] + roots
    index = {p: i for i, p in enumerate(pairs)}
    dim = len(pairs)
    entries = []
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            if b == c:
                entries.append((i, j, [(index[(a, d)], 1)]))
    unit = [1 if i < n else 0 for i in range(dim)]
    blocks = [
        Block(tuple(1 if t == i else 0 for t in range(dim)), 1, (i,))
        for i in range(n)
    ]
    radical = tuple(range(n, dim))
    return validate_algebra(AlgebraSpec(field, dim, entries, unit, blocks, radical))


def basic_subsets(n: int) -> list[BasicSubset]:
    """All non-attacking root placements, ordered by size then root list."""
    roots = [Root(i, j) for i, j in positive_roots(n)]
    out = []
    for k in range(0, n):
        for combo in combinations(roots, k):
            rows = {r.row for r in combo}
            cols = {r.col for r in combo}
            if len(rows) == len(combo) and len(cols) == len(combo):
                out.append(BasicSubset(combo))
    out.sort(key=lambda d: d.sort_key())
    return out


def is_regular_D(d: BasicSubset, n: int) -> bool:
    return d.rowcol() == frozenset(range(1, n + 1))


def x_D(spec: AlgebraSpec, n: int, d: BasicSubset):
    vec = [0] * spec.dim
    roots = positive_roots(n)
    for r in d.roots:
        vec[n + roots.index((r.row, r.col))] = 1
    return tuple(vec)


def lambda_D(n: int, d: BasicSubset) -> tuple:
    roots = positive_roots(n)
    coords = [0] * len(roots)
    for r in d.roots:
        coords[roots.index((r.row, r.col))] = 1
    return tuple(coords)


def labels(n: int, field: FieldSpec):
    """All (h, D') superclass labels and (c, D) supercharacter labels."""
    q = field.q
    units = sorted(field.units())
    subsets = basic_subsets(n)
    class_labels = []
    char_labels = []
    for d in subsets:
        rc = d.rowcol()
        free = [i for i in range(1, n + 1) if i not in rc]
        hs = [()]
        cs = [()]
        for i in range(1, n + 1):
            if i in rc:
                hs = [h + (1,) for h in hs]
                cs = [c + (0,) for c in cs]
            else:
                hs = [h + (u,) for h in hs for u in units]
                cs = [c + (e,) for c in cs for e in range(max(q - 1, 1))]
        class_labels.extend(TriSuperclassLabel(h, d) for h in sorted(hs))
        char_labels.extend(TriSupercharLabel(c, d) for c in sorted(cs))
    return class_labels, char_labels


# ---------------------------------------------------------------------------
# the closed-form value
# ---------------------------------------------------------------------------

def delta_factors(d: BasicSubset, h: tuple, dprime: BasicSubset):
    """(delta', delta'', delta_0) of the value formula."""
    d1 = 1
    d2 = 1
    dp = {(r.row, r.col) for r in dprime.roots}
    for g in d.roots:
        for k in range(g.row + 1, g.col):
            if (g.row, k) in dp:
                d1 = 0
            if (k, g.col) in dp:
                d2 = 0
    d0 = 1 if all(h[i - 1] == 1 for i in d.rowcol()) else 0
    return d1, d2, d0


def _window_matrix(field: FieldSpec, g: Root, h: tuple, dprime: BasicSubset):
    """Submatrix of g_{h,D'} - 1 with rows and columns in (row(g), col(g))."""
    lo, hi = g.row + 1, g.col - 1
    idx = list(range(lo, hi + 1))
    dp = {(r.row, r.col) for r in dprime.roots}
    mat = []
    for r in idx:
        row = []
        for c in idx:
            if r == c:
                row.append(field.sub(h[r - 1], 1))
            elif (r, c) in dp:
                row.append(1)
            else:
                row.append(0)
        mat.append(row)
    return mat


def m_and_s(d: BasicSubset, h: tuple, dprime: BasicSubset, field: FieldSpec):
    """(m, s): total window corank and the (q-1)-exponent of the value."""
    m = 0
    for g in d.roots:
        mat = _window_matrix(field, g, h, dprime)
        zero_rows = sum(1 for row in mat if all(v == 0 for v in row))
        corank = len(mat) - linalg.rank(field, mat) if mat else 0
        # the window has at most one nonzero entry per row/column for valid
        # labels, so corank must agree with the zero-row count
        assert corank == zero_rows, f"window of {g.render()} is not a partial permutation"
        m += corank
    # s counts the free torus coordinates of the coset space: one per index
    # touched by D, minus one per root shared with D'.  When no two roots of D
    # chain (share an index) this equals |D| + |D \ D'|, but chained roots
    # share a torus coordinate, and the value at the identity must stay equal
    # to the index |G|/|G_lambda| of the stabilizer.
    s = len(d.rowcol()) - len(set(d.roots) & set(dprime.roots))
    return m, s


def cyclo_order_for(field: FieldSpec) -> int:
    return lcm(field.p, max(field.q - 1, 1))


def value(char: TriSupercharLabel, cls: TriSuperclassLabel, field: FieldSpec,
          order: int | None = None) -> CycloNumber:
    """Closed-form supercharacter value on a superclass."""
    if order is None:
        order = cyclo_order_for(field)
    d1, d2, d0 = delta_factors(char.d, cls.h, cls.dprime)
    if d1 * d2 * d0 == 0:
        return CycloNumber.zero(order)
    m, s = m_and_s(char.d, cls.h, cls.dprime, field)
    inter = len(set(char.d.roots) & set(cls.dprime.roots))
    scalar = (-1) ** inter * field.q ** m * (field.q - 1) ** s
    exp = 0
    if field.q > 2:
        step = order // (field.q - 1)
        for ci, hi in zip(char.c, cls.h):
            exp = (exp + ci * field.dlog(hi) * step) % order
    return CycloNumber.root(order, exp) * scalar


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def diag_embed(spec: AlgebraSpec, n: int, h: tuple):
    vec = [0] * spec.dim
    for i in range(n):
        vec[i] = h[i]
    return tuple(vec)


def class_record_map(spec: AlgebraSpec, n: int, class_labels, partition):
    """Bijection from (h, D') labels to superclass records via g_{h,D'}."""
    member_to_idx = {}
    for ci, rec in enumerate(partition):
        for g in rec.members:
            member_to_idx[g] = ci
    mapping = []
    for lbl in class_labels:
        g = spec.add(diag_embed(spec, n, lbl.h), x_D(spec, n, lbl.dprime))
        mapping.append(member_to_idx[g])
    assert sorted(mapping) == list(range(len(partition))), \
        "triangular labels do not biject onto the superclass partition"
    return mapping


def to_general_label(spec: AlgebraSpec, n: int, lbl: TriSupercharLabel) -> SupercharLabel:
    e = frozenset(i - 1 for i in lbl.d.rowcol())
    f = frozenset(i for i, c in enumerate(lbl.c) if c % max(spec.field.q - 1, 1) != 0)
    return SupercharLabel(e, f, lbl.c, lambda_D(n, lbl.d))


def closed_table(n: int, field: FieldSpec, sizes=None) -> CharacterTable:
    class_labels, char_labels = labels(n, field)
    order = cyclo_order_for(field)
    values = [[value(ch, cl, field, order) for cl in class_labels] for ch in char_labels]
    if sizes is None:
        sizes = [None] * len(class_labels)
    go = 1
    for _ in range(n):
        go *= field.q - 1
    go *= field.q ** (n * (n - 1) // 2)
    return CharacterTable(char_labels, class_labels, sizes, values, go, order,
                          constancy="closed-form")


def brute_table(n: int, field: FieldSpec, bound: int = DEFAULT_GROUP_BOUND,
                constancy: str = "full", jobs: int = 1,
                partition=None, spec: AlgebraSpec | None = None) -> CharacterTable:
    """The same table by literal induction over the whole group."""
    if spec is None:
        spec = make_triangular(n, field)
    if partition is None:
        partition = superclass_partition(spec, bound)
    class_labels, char_labels = labels(n, field)
    mapping = class_record_map(spec, n, class_labels, partition)
    gen_labels = [to_general_label(spec, n, ch) for ch in char_labels]
    base = build_table(spec, partition, gen_labels, bound, constancy=constancy, jobs=jobs)
    # re-index columns by the triangular label order
    values = [[row[mapping[c]] for c in range(len(class_labels))] for row in base.values]
    sizes = [partition[mapping[c]].size for c in range(len(class_labels))]
    return CharacterTable(char_labels, class_labels, sizes, values,
                          base.group_order, base.cyclo_order, constancy=base.constancy)


def table(n: int, field: FieldSpec, mode: str = "closed_form",
          bound: int = DEFAULT_GROUP_BOUND, jobs: int = 1) -> CharacterTable:
    if mode in ("closed_form", "closed"):
        sizes = None
        if group_order_tri(n, field) <= bound:
            spec = make_triangular(n, field)
            partition = superclass_partition(spec, bound)
            class_labels, _ = labels(n, field)
            mapping = class_record_map(spec, n, class_labels, partition)
            sizes = [partition[i].size for i in mapping]
        return closed_table(n, field, sizes)
    if mode in ("brute_force", "brute"):
        constancy = "full" if group_order_tri(n, field) <= 1000 else "sample"
        return brute_table(n, field, bound, constancy=constancy, jobs=jobs)
    raise ValueError(f"unknown table mode {mode!r}")


def group_order_tri(n: int, field: FieldSpec) -> int:
    return (field.q - 1) ** n * field.q ** (n * (n - 1) // 2)


def compare_tables(t1: CharacterTable, t2: CharacterTable) -> list[str]:
    """Entrywise diff of two tables sharing label sets; empty means identical."""
    diffs = []
    if [l.render() for l in t1.row_labels] != [l.render() for l in t2.row_labels]:
        diffs.append("row label sets differ")
    if [l.render() for l in t1.col_labels] != [l.render() for l in t2.col_labels]:
        diffs.append("column label sets differ")
    if diffs:
        return diffs
    for r, (row1, row2) in enumerate(zip(t1.values, t2.values)):
        for c, (a, b) in enumerate(zip(row1, row2)):
            if a != b:
                diffs.append(
                    f"[{t1.row_labels[r].render()} @ {t1.col_labels[c].render()}] "
                    f"{a.render()} != {b.render()}")
    return diffs
