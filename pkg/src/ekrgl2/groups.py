"""Enumeration of the matrix groups G = det^{-1}(D) with SL2 <= G <= GL2.

A group is parameterized by its determinant subgroup D <= F_q^*; this
captures exactly the intermediate groups between SL2(q) and GL2(q), since
subgroups of a cyclic group are unique per order.  Elements are stored in a
deterministic order (lexicographic by matrix entries, identity first) so
that bit positions in subsets and all downstream reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg2
from .gf import DetSubgroup, Field, FieldError
from .linalg2 import IDENTITY, det, in_line, line_of, mat_inv, mat_mul, mat_vec


@dataclass(frozen=True)
class GroupSpec:
    field: Field
    detgroup: DetSubgroup

    def __post_init__(self):
        if (self.field.q - 1) % self.detgroup.d != 0:
            raise FieldError(
                f"d = {self.detgroup.d} does not divide q - 1 = {self.field.q - 1}"
            )

    @property
    def q(self):
        return self.field.q

    @property
    def d(self):
        return self.detgroup.d

    @property
    def in_theorem_scope(self) -> bool:
        """The classification theorems need SL2 < G strictly, i.e. d >= 2."""
        return self.d >= 2


def group_spec(p: int, k: int, d: int) -> GroupSpec:
    field = Field(p, k)
    return GroupSpec(field, field.unit_subgroup(d))


class GroupTable:
    """Fully enumerated group with element <-> index maps.

    Immutable after build_group returns it; safe to share across threads.
    """

    def __init__(self, spec, elements, index, inv_index):
        self.spec = spec
        self.elements = elements
        self.index = index
        self.inv_index = inv_index
        self.size = len(elements)

    @property
    def field(self):
        return self.spec.field

    @property
    def q(self):
        return self.spec.q

    @property
    def d(self):
        return self.spec.d

    def mul(self, i: int, j: int) -> int:
        return self.index[mat_mul(self.field, self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.inv_index[i]

    def __repr__(self):
        return f"GroupTable(q={self.q}, d={self.d}, size={self.size})"


def build_group(spec: GroupSpec) -> GroupTable:
    """Enumerate all 2x2 matrices over F_q with determinant in D.

    Order: lexicographic by entries (a, b, c, d), with the identity moved
    to index 0.  |G| = q(q^2-1)d.
    """
    F = spec.field
    dets = spec.detgroup.elements
    q = F.q
    elements = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for dd in range(q):
                    M = (a, b, c, dd)
                    if det(F, M) in dets:
                        elements.append(M)
    elements.remove(IDENTITY)
    elements.insert(0, IDENTITY)
    index = {M: i for i, M in enumerate(elements)}
    inv_index = [index[mat_inv(F, M)] for M in elements]
    return GroupTable(spec, elements, index, inv_index)


class Subset:
    """Bit-packed set of element indices of one GroupTable."""

    __slots__ = ("owner", "bits")

    def __init__(self, owner: GroupTable, bits: int = 0):
        self.owner = owner
        self.bits = bits

    @classmethod
    def from_indices(cls, owner, ids):
        bits = 0
        for i in ids:
            bits |= 1 << i
        return cls(owner, bits)

    def indices(self):
        bits = self.bits
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, i):
        return (self.bits >> i) & 1 == 1

    def __iter__(self):
        return iter(self.indices())

    def __eq__(self, other):
        return (
            isinstance(other, Subset)
            and self.owner is other.owner
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash(self.bits)

    def __and__(self, other):
        return Subset(self.owner, self.bits & other.bits)

    def __or__(self, other):
        return Subset(self.owner, self.bits | other.bits)

    def issubset(self, other) -> bool:
        return self.bits & ~other.bits == 0

    def add(self, i):
        self.bits |= 1 << i

    def __repr__(self):
        return f"Subset({self.indices()})"


# ---------------------------------------------------------------------------
# Stabilizers and the H subgroups
# ---------------------------------------------------------------------------

def stabilizer(G: GroupTable, v) -> Subset:
    """G_v = { g : g(v) = v } for a nonzero vector v; |G_v| = qd."""
    if v == linalg2.ZERO_VEC:
        raise ValueError("stabilizer of the zero vector is the whole group")
    F = G.field
    bits = 0
    for i, M in enumerate(G.elements):
        if mat_vec(F, M, v) == v:
            bits |= 1 << i
    return Subset(G, bits)


def orbit(G: GroupTable, v):
    """The orbit of a nonzero vector; transitivity gives all of V \\ {0}."""
    if v == linalg2.ZERO_VEC:
        raise ValueError("orbit of the zero vector")
    F = G.field
    return {mat_vec(F, M, v) for M in G.elements}


def line_stabilizer(G: GroupTable, line) -> Subset:
    """Setwise stabilizer of a 1-dimensional subspace."""
    F = G.field
    bits = 0
    for i, M in enumerate(G.elements):
        if line_of(F, mat_vec(F, M, line)) == line:
            bits |= 1 << i
    return Subset(G, bits)


def basis_through(F, line):
    """A deterministic basis {v0, w} of V with w the line representative."""
    w = line
    v0 = (1, 0) if w == (0, 1) else (0, 1)
    return v0, w


def build_H(G: GroupTable, line) -> Subset:
    """H_<w> = { M in G : Mv - v in <w> for all v }, tested on a basis only.

    By linearity it suffices to test the two basis vectors; the full
    q^2-vector definition is kept in build_H_bruteforce as a cross-check.
    """
    F = G.field
    v0, w = basis_through(F, line)
    bits = 0
    for i, M in enumerate(G.elements):
        if in_line(F, linalg2.vec_sub(F, mat_vec(F, M, v0), v0), line) and in_line(
            F, linalg2.vec_sub(F, mat_vec(F, M, w), w), line
        ):
            bits |= 1 << i
    return Subset(G, bits)


def build_H_bruteforce(G: GroupTable, line) -> Subset:
    """H_<w> by its literal definition: Mv - v in <w> for every vector v."""
    F = G.field
    q = F.q
    vectors = [(x, y) for x in range(q) for y in range(q)]
    bits = 0
    for i, M in enumerate(G.elements):
        ok = True
        for v in vectors:
            if not in_line(F, linalg2.vec_sub(F, mat_vec(F, M, v), v), line):
                ok = False
                break
        if ok:
            bits |= 1 << i
    return Subset(G, bits)


def change_of_basis(F, v, w, M):
    """[M]_B for the basis B = {v, w}: P^{-1} M P with P = [v | w]."""
    P = (v[0], w[0], v[1], w[1])
    if det(F, P) == 0:
        raise ValueError(f"{v} and {w} are linearly dependent")
    return mat_mul(F, mat_inv(F, P), mat_mul(F, M, P))


def left_coset(G: GroupTable, x: int, S: Subset) -> Subset:
    """x * S as a Subset; same cardinality as S."""
    bits = 0
    for i in S.indices():
        bits |= 1 << G.mul(x, i)
    return Subset(G, bits)


def is_subgroup(G: GroupTable, S: Subset) -> bool:
    """Closure under product and inverse, with the identity present."""
    ids = S.indices()
    if 0 not in S:
        return False
    for i in ids:
        if G.inv(i) not in S:
            return False
        for j in ids:
            if G.mul(i, j) not in S:
                return False
    return True
