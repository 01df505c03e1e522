"""Intersecting sets of G as cliques of a Cayley fixing graph.

Two group elements g, h agree on some nonzero vector iff g^{-1}h has a
nonzero fixed vector, so the "agree somewhere" relation is a Cayley graph
on G with connection set S = { g != Id : det(g - I) = 0 }.  Intersecting
sets are exactly the cliques (plus the empty set and singletons, by
convention).  This module provides the graph, exact maximum/maximal clique
search, classification of maximum cliques into the two coset families,
extension of arbitrary intersecting sets to maximum ones, and the
matrix-shape and counting checks used by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    GroupTable,
    Subset,
    build_H,
    change_of_basis,
    stabilizer,
)
from .linalg2 import (
    all_lines,
    det,
    fixes_nonzero,
    in_line,
    line_of,
    mat_vec,
    vec_sub,
)

DEFAULT_ADJACENCY_LIMIT = 20000
DEFAULT_ENUM_LIMIT = 1000

STABILIZER_COSET = "STABILIZER_COSET"
H_COSET = "H_COSET"
OTHER = "OTHER"


class FixingGraph:
    """Bit-packed Cayley graph of the agreement relation on a GroupTable."""

    def __init__(self, owner: GroupTable, connection: int, adj):
        self.owner = owner
        self.connection = connection
        self.adj = adj
        self.n = owner.size

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if self.adj is not None:
            return (self.adj[i] >> j) & 1 == 1
        return (self.connection >> self.owner.mul(self.owner.inv(i), j)) & 1 == 1

    def neighbors_mask(self, i: int) -> int:
        if self.adj is not None:
            return self.adj[i]
        G = self.owner
        bits = 0
        conn = self.connection
        while conn:
            low = conn & -conn
            s = low.bit_length() - 1
            bits |= 1 << G.mul(i, s)
            conn ^= low
        return bits

    def degree(self, i: int) -> int:
        return self.neighbors_mask(i).bit_count()

    def connection_indices(self):
        return _bit_indices(self.connection)


def _bit_indices(bits: int):
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def build_fixing_graph(G: GroupTable, *, adjacency_limit: int = DEFAULT_ADJACENCY_LIMIT) -> FixingGraph:
    """Connection set in O(|G|) determinant tests; adjacency as translates.

    The neighborhood of g is g*S, so each adjacency row costs |S| group
    multiplications instead of |G| pair tests.  Rows are materialized only
    up to adjacency_limit vertices; beyond that adjacency is answered
    through the connection set on demand.
    """
    F = G.field
    connection = 0
    for i, M in enumerate(G.elements):
        if i != 0 and fixes_nonzero(F, M):
            connection |= 1 << i
    conn_ids = _bit_indices(connection)
    adj = None
    if G.size <= adjacency_limit:
        adj = []
        mul = G.mul
        for i in range(G.size):
            bits = 0
            for s in conn_ids:
                bits |= 1 << mul(i, s)
            adj.append(bits)
    return FixingGraph(G, connection, adj)


# ---------------------------------------------------------------------------
# Intersecting-set predicates
# ---------------------------------------------------------------------------

def is_intersecting(G: GroupTable, F: Subset, graph: FixingGraph | None = None) -> bool:
    """Pairwise agreement test; empty sets and singletons are intersecting."""
    ids = F.indices()
    if graph is not None:
        for a, i in enumerate(ids):
            mask = graph.neighbors_mask(i)
            for j in ids[a + 1:]:
                if (mask >> j) & 1 == 0:
                    return False
        return True
    field = G.field
    for a, i in enumerate(ids):
        inv_i = G.inv(i)
        for j in ids[a + 1:]:
            if not fixes_nonzero(field, G.elements[G.mul(inv_i, j)]):
                return False
    return True


def is_intersecting_bruteforce(G: GroupTable, F: Subset) -> bool:
    """Agreement by explicit vector scans, no determinant shortcut."""
    field = G.field
    q = field.q
    vectors = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    ids = F.indices()
    for a, i in enumerate(ids):
        g = G.elements[i]
        for j in ids[a + 1:]:
            h = G.elements[j]
            if not any(mat_vec(field, g, u) == mat_vec(field, h, u) for u in vectors):
                return False
    return True


def normalize(G: GroupTable, F: Subset) -> Subset:
    """Translate F by the inverse of its smallest-index member.

    The result contains the identity, has the same size, and is still
    intersecting (left translation preserves pairwise agreement).
    """
    if F.bits == 0:
        raise ValueError("cannot normalize the empty set")
    x = (F.bits & -F.bits).bit_length() - 1
    if x == 0:
        return Subset(G, F.bits)
    inv_x = G.inv(x)
    bits = 0
    for i in F.indices():
        bits |= 1 << G.mul(inv_x, i)
    return Subset(G, bits)


# ---------------------------------------------------------------------------
# Exact maximum clique (branch and bound, greedy coloring, bit-parallel)
# ---------------------------------------------------------------------------

class _Found(Exception):
    pass


def _color_sort(adj, P):
    """Greedy coloring of the vertex mask P: vertices with color bounds."""
    order = []
    bounds = []
    color = 0
    uncolored = P
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v]
            avail &= ~low
            uncolored ^= low
            order.append(v)
            bounds.append(color)
    return order, bounds


def _greedy_clique(adj, P):
    """Heuristic clique inside P: repeatedly take the candidate of highest
    residual degree.  Used only as the initial incumbent of the exact search."""
    mask = 0
    cand = P
    while cand:
        best_v = -1
        best_deg = -1
        for v in _bit_indices(cand):
            deg = (adj[v] & cand).bit_count()
            if deg > best_deg:
                best_deg = deg
                best_v = v
        mask |= 1 << best_v
        cand &= adj[best_v]
    return mask


def _max_clique_mask(adj, P, incumbent_mask=0, prune_below=0, stop_at=None):
    """Exact maximum clique within vertex mask P.

    incumbent_mask must be a genuine clique inside P; prune_below only
    tightens the bound (branches that cannot beat it are cut) and is used
    for pure decision queries.  Returns (size, mask) of the best clique
    actually found.
    """
    best = max(incumbent_mask.bit_count(), prune_below)
    best_mask = incumbent_mask
    found_size = incumbent_mask.bit_count()

    def expand(rmask, rsize, cand):
        nonlocal best, best_mask, found_size
        order, bounds = _color_sort(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if rsize + bounds[i] <= best:
                return
            v = order[i]
            bit = 1 << v
            nsize = rsize + 1
            nmask = rmask | bit
            if nsize > found_size:
                found_size = nsize
                best_mask = nmask
                if nsize > best:
                    best = nsize
                if stop_at is not None and nsize >= stop_at:
                    raise _Found
            newcand = cand & adj[v]
            if newcand:
                expand(nmask, nsize, newcand)
            cand &= ~bit

    try:
        expand(0, 0, P)
    except _Found:
        pass
    return found_size, best_mask


@dataclass
class MaxCliqueResult:
    members: Subset
    size: int
    certified_optimal: bool


def max_clique(graph: FixingGraph) -> MaxCliqueResult:
    """Certified maximum clique of the fixing graph.

    Vertex transitivity (it is a Cayley graph) means every maximum clique
    has a left translate through the identity vertex, so the search runs on
    the neighborhood of vertex 0 and adds 1.  The search never assumes any
    expected value: the incumbent is found greedily and the branch and
    bound is exhaustive, so the result is certified optimal, including the
    nonexistence of any strictly larger clique.
    """
    adj = _require_adjacency(graph)
    P = graph.neighbors_mask(0)
    if P == 0:
        return MaxCliqueResult(Subset(graph.owner, 1), 1, True)
    incumbent = _greedy_clique(adj, P)
    size, mask = _max_clique_mask(adj, P, incumbent_mask=incumbent)
    return MaxCliqueResult(Subset(graph.owner, mask | 1), size + 1, True)


def exists_clique(graph: FixingGraph, k: int) -> bool:
    """Decision query: does the fixing graph contain a clique of size k?"""
    if k <= 1:
        return k == 1 and graph.n >= 1
    adj = _require_adjacency(graph)
    P = graph.neighbors_mask(0)
    size, _ = _max_clique_mask(adj, P, prune_below=k - 2, stop_at=k - 1)
    return size >= k - 1


def _require_adjacency(graph: FixingGraph):
    if graph.adj is None:
        raise ValueError(
            f"graph with {graph.n} vertices has no materialized adjacency; "
            "raise adjacency_limit"
        )
    return graph.adj


# ---------------------------------------------------------------------------
# Maximal clique enumeration (Bron-Kerbosch with pivoting)
# ---------------------------------------------------------------------------

def _bron_kerbosch(adj, P, R=0, X=0):
    if P == 0 and X == 0:
        yield R
        return
    pivot = -1
    pivot_deg = -1
    for u in _bit_indices(P | X):
        deg = (adj[u] & P).bit_count()
        if deg > pivot_deg:
            pivot_deg = deg
            pivot = u
    ext = P & ~adj[pivot]
    while ext:
        low = ext & -ext
        v = low.bit_length() - 1
        yield from _bron_kerbosch(adj, P & adj[v], R | low, X & adj[v])
        P ^= low
        X |= low
        ext ^= low


def enumerate_maximal_cliques(graph: FixingGraph, *, limit: int = DEFAULT_ENUM_LIMIT):
    """Every maximal clique exactly once, in a deterministic order."""
    if graph.n > limit:
        raise ValueError(f"{graph.n} vertices exceeds the enumeration limit {limit}")
    adj = _require_adjacency(graph)
    full = (1 << graph.n) - 1
    for mask in _bron_kerbosch(adj, full):
        yield Subset(graph.owner, mask)


# ---------------------------------------------------------------------------
# Classification of maximum intersecting sets
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    kind: str
    line: tuple | None = None
    translator: int | None = None


@dataclass
class CliqueReport:
    members: Subset
    size: int
    classification: Classification
    theorem_scope: bool


def coset_families(G: GroupTable, h_builder=build_H):
    """The q+1 point stabilizers (at canonical line representatives) and
    the q+1 subgroups H_<w>, cached on the group table."""
    key = ("_ekr_families", h_builder.__name__)
    cached = getattr(G, "_ekr_families", None)
    if cached is not None and cached[0] == key:
        return cached[1]
    lines = all_lines(G.field)
    stabs = [(L, stabilizer(G, L)) for L in lines]
    hs = [(L, h_builder(G, L)) for L in lines]
    G._ekr_families = (key, (stabs, hs))
    return stabs, hs


def classify_maximum(G: GroupTable, F: Subset, h_builder=build_H) -> CliqueReport:
    """Match a maximum intersecting set against the two coset families.

    After translating F to contain the identity, a size-qd set inside some
    G_v must equal G_v, and similarly for H_<w>; checking the q+1 canonical
    representatives covers all vectors since G_v = G_{av}.
    """
    target = G.q * G.d
    if len(F) != target:
        raise ValueError(f"|F| = {len(F)}, expected qd = {target}")
    x = (F.bits & -F.bits).bit_length() - 1
    F0 = normalize(G, F)
    stabs, hs = coset_families(G, h_builder)
    for line, stab in stabs:
        if F0.issubset(stab):
            return CliqueReport(F, target, Classification(STABILIZER_COSET, line, x),
                                G.spec.in_theorem_scope)
    for line, h in hs:
        if F0 == h:
            return CliqueReport(F, target, Classification(H_COSET, line, x),
                                G.spec.in_theorem_scope)
    return CliqueReport(F, target, Classification(OTHER), G.spec.in_theorem_scope)


def h_family_is_new(G: GroupTable) -> bool:
    """Measured separation of the two families: no H_<w> is a stabilizer coset.

    A coset of G_v containing the identity is G_v itself, so it suffices to
    compare each H_<w> against the q+1 stabilizers.
    """
    stabs, hs = coset_families(G)
    return all(h != stab for _, h in hs for _, stab in stabs)


# ---------------------------------------------------------------------------
# Extension to maximum intersecting sets
# ---------------------------------------------------------------------------

def extend_to_maximum(graph: FixingGraph, F: Subset | None = None) -> Subset | None:
    """Grow an intersecting set to one of size qd by backtracking search.

    Candidates are the common neighbors of the current members; the search
    is exhaustive, so None is returned only when no extension exists (which
    the classification theorem rules out for d >= 2).
    """
    G = graph.owner
    adj = _require_adjacency(graph)
    target = G.q * G.d
    bits = 0 if F is None else F.bits
    if bits and not is_intersecting(G, Subset(G, bits), graph):
        raise ValueError("seed set is not intersecting")
    size = bits.bit_count()
    if size >= target:
        return Subset(G, bits)
    cand = (1 << graph.n) - 1
    for v in _bit_indices(bits):
        cand &= adj[v]
    result = _extend_dfs(adj, bits, size, cand, target)
    return Subset(G, result) if result else None


def _extend_dfs(adj, R, size, cand, target):
    if size == target:
        return R
    while cand:
        if size + cand.bit_count() < target:
            return 0
        low = cand & -cand
        v = low.bit_length() - 1
        found = _extend_dfs(adj, R | low, size + 1, cand & adj[v], target)
        if found:
            return found
        cand ^= low
    return 0


# ---------------------------------------------------------------------------
# Matrix-shape and bound checks for intersecting sets
# ---------------------------------------------------------------------------

def _basis_or_raise(F, v, w):
    if det(F, (v[0], w[0], v[1], w[1])) == 0:
        raise ValueError(f"{v}, {w} is not a basis")


def check_lemma_shapes(G: GroupTable, F: Subset, v, w) -> dict:
    """Shape constraints on F relative to a basis {v, w}.

    For x in F0 fixing v: [x]_B = [[1, c], [0, lam]] with lam in det(G).
    For y in F0 fixing w, paired with such an x: [y]_B =
    [[1 + c*a, 0], [(lam - 1)*a, 1]] for some nonzero a.  The pairwise
    check doubles as the containment of F0 within the one-parameter family
    determined by (c, lam).
    """
    field = G.field
    _basis_or_raise(field, v, w)
    if 0 not in F:
        raise ValueError("F must contain the identity")
    dets = G.spec.detgroup.elements
    xs = []
    ys = []
    for i in F.indices():
        if i == 0:
            continue
        M = G.elements[i]
        if mat_vec(field, M, v) == v:
            xs.append(i)
        if mat_vec(field, M, w) == w:
            ys.append(i)
    violations = []
    x_forms = {}
    for i in xs:
        b = change_of_basis(field, v, w, G.elements[i])
        if b[0] != 1 or b[2] != 0 or b[3] not in dets:
            violations.append(("x_shape", i, b))
        else:
            x_forms[i] = (b[1], b[3])  # (c, lam)
    y_forms = {}
    for j in ys:
        b = change_of_basis(field, v, w, G.elements[j])
        if b[1] != 0 or b[3] != 1:
            violations.append(("y_shape", j, b))
        else:
            y_forms[j] = (b[0], b[2])  # (y11, y21)
    pairs = 0
    for i, (c, lam) in x_forms.items():
        lam1 = field.sub(lam, 1)
        for j, (y11, y21) in y_forms.items():
            if i == j:
                continue
            pairs += 1
            ok = any(
                y11 == field.add(1, field.mul(c, a)) and y21 == field.mul(lam1, a)
                for a in range(1, field.q)
            )
            if not ok:
                violations.append(("pair", i, j))
    return {
        "num_x": len(xs),
        "num_y": len(ys),
        "pairs_checked": pairs,
        "violations": violations,
        "ok": not violations,
    }


def check_corollaries(G: GroupTable, F: Subset, v, w) -> dict:
    """Bound and membership consequences for F relative to the basis {v, w}:
    the diagonal-element criterion forcing F and G_v into the line
    stabilizer of <w>, the epsilon bound on |F0 and G_w|, and the
    y(v) - v in <w> displacement condition.
    """
    field = G.field
    _basis_or_raise(field, v, w)
    if 0 not in F:
        raise ValueError("F must contain the identity")
    q, d = field.q, G.d
    w_line = line_of(field, w)
    v_line = line_of(field, v)
    dets = G.spec.detgroup.elements

    def stabilizes_line(M, line):
        return line_of(field, mat_vec(field, M, line)) == line

    Fv0, Fw0 = [], []
    for i in F.indices():
        if i == 0:
            continue
        M = G.elements[i]
        if mat_vec(field, M, v) == v:
            Fv0.append(i)
        if mat_vec(field, M, w) == w:
            Fw0.append(i)

    violations = []
    checks = {}

    # diagonal element in F0 and G_v plus nontrivial F and G_w forces
    # F and G_v into the line stabilizer of <w>
    has_diag = False
    for i in Fv0:
        b = change_of_basis(field, v, w, G.elements[i])
        if b == (1, 0, 0, b[3]) and b[3] in dets:
            has_diag = True
            break
    checks["containment_applicable"] = has_diag and bool(Fw0)
    if checks["containment_applicable"]:
        for i in Fv0:
            if not stabilizes_line(G.elements[i], w_line):
                violations.append(("containment", i))

    # epsilon bound on |F0 and G_w|
    if Fv0:
        contained = all(stabilizes_line(G.elements[i], w_line) for i in Fv0)
        eps = q - 1 if contained else d - 1
        checks["epsilon"] = eps
        if len(Fw0) > eps:
            violations.append(("epsilon_bound", len(Fw0), eps))
    if Fw0 and not all(stabilizes_line(G.elements[j], v_line) for j in Fw0):
        checks["symmetric_bound"] = d - 1
        if len(Fv0) > d - 1:
            violations.append(("symmetric_bound", len(Fv0), d - 1))

    # displacement: y(v) - v in <w> whenever some x fixes v and <w>
    xs_in_line_stab = [i for i in Fv0 if stabilizes_line(G.elements[i], w_line)]
    pairs = 0
    if xs_in_line_stab:
        for j in Fw0:
            if j in xs_in_line_stab:
                continue
            pairs += 1
            yv = mat_vec(field, G.elements[j], v)
            if not in_line(field, vec_sub(field, yv, v), w_line):
                violations.append(("displacement", j))
    checks["displacement_pairs"] = pairs

    return {
        "num_x": len(Fv0),
        "num_y": len(Fw0),
        "checks": checks,
        "violations": violations,
        "ok": not violations,
    }


def case_iii_bound(q: int, d: int) -> bool:
    """(q+1)(d-1) + 1 < qd, the arithmetic step that closes the size bound."""
    return (q + 1) * (d - 1) + 1 < q * d


# ---------------------------------------------------------------------------
# Random intersecting sets and export
# ---------------------------------------------------------------------------

def random_intersecting_set(graph: FixingGraph, rng, size: int | None = None) -> Subset:
    """A random intersecting set grown greedily from a random vertex."""
    G = graph.owner
    adj = _require_adjacency(graph)
    target = size if size is not None else rng.randint(1, G.q * G.d)
    v = rng.randrange(graph.n)
    bits = 1 << v
    cand = adj[v]
    count = 1
    while count < target and cand:
        ids = _bit_indices(cand)
        u = ids[rng.randrange(len(ids))]
        bits |= 1 << u
        cand &= adj[u]
        count += 1
    return Subset(G, bits)


def to_dimacs(graph: FixingGraph) -> str:
    """Undirected DIMACS format, 1-indexed, one edge per unordered pair."""
    adj = _require_adjacency(graph)
    lines = []
    m = 0
    for i in range(graph.n):
        upper = adj[i] >> (i + 1)
        j = i + 1
        while upper:
            if upper & 1:
                lines.append(f"e {i + 1} {j + 1}")
                m += 1
            upper >>= 1
            j += 1
    return "\n".join([f"p edge {graph.n} {m}"] + lines) + "\n"
