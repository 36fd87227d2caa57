"""CSR graph core: Grassmann graph construction, distance-regularity audits,
local graphs, and a power-iteration bound on the smallest adjacency eigenvalue.

Graphs are immutable, simple, undirected, and stored in compressed sparse row
form with int32 vertex ids and sorted adjacency rows.  The Grassmann builder
generates each edge exactly once from the star of its (D-1)-dimensional meet,
which doubles as a uniqueness certificate for the edge set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drgparams import IntersectionArray
from .qlinalg import (
    BudgetError,
    FieldSpec,
    _iter_rref_rowtuples,
    enumerate_subspace_keys,
    extension_rowtuples,
    gauss_binomial,
    gauss_bracket,
    key_to_rows,
    rows_key,
)

AUDIT_FULL_CUTOFF = 2000  # auto mode: full audit at or below, sampled above
AUDIT_SAMPLE_DEFAULT = 64
MAX_VERTICES = 2**31 - 1  # ids are int32


class ConvergenceError(RuntimeError):
    """Power iteration failed to reach the tolerance within the iteration cap."""


@dataclass(frozen=True)
class GrassmannLabels:
    """Subspace identities of the vertices of a Grassmann-built graph."""

    n: int
    D: int
    q: int
    keys: np.ndarray  # int64, ascending; keys[v] identifies vertex v

    def basis(self, v: int) -> tuple[int, ...]:
        """Packed RREF basis rows of vertex v's subspace."""
        return key_to_rows(int(self.keys[v]), self.D, self.n, self.q)

    def vertex_of_key(self, key: int) -> int:
        i = int(np.searchsorted(self.keys, key))
        if i >= len(self.keys) or self.keys[i] != key:
            raise KeyError(f"no vertex with subspace key {key}")
        return i


class Graph:
    """Immutable simple undirected graph in CSR form."""

    __slots__ = ("vertex_count", "indptr", "indices", "labels")

    def __init__(self, vertex_count, indptr, indices, labels=None, validated=False):
        if vertex_count < 0 or vertex_count > MAX_VERTICES:
            raise ValueError("vertex count out of the 32-bit id range")
        self.vertex_count = int(vertex_count)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.labels = labels
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        if not validated:
            self._validate()

    def _validate(self) -> None:
        V = self.vertex_count
        if self.indptr.shape != (V + 1,) or self.indptr[0] != 0:
            raise ValueError("malformed indptr")
        if self.indptr[-1] != len(self.indices) or np.any(np.diff(self.indptr) < 0):
            raise ValueError("malformed indptr")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= V):
            raise ValueError("neighbor id out of range")
        deg = self.degrees()
        rowid = np.repeat(np.arange(V, dtype=np.int64), deg)
        if np.any(self.indices == rowid):
            raise ValueError("self-loop")
        if len(self.indices) > 1:
            inner = np.diff(self.indices) <= 0
            bounds = self.indptr[1:-1] - 1  # row boundaries may decrease
            bounds = bounds[(bounds >= 0) & (bounds < len(inner))]
            inner[bounds] = False
            if inner.any():
                raise ValueError("adjacency rows must be strictly ascending")
        fwd = rowid * V + self.indices
        rev = self.indices.astype(np.int64) * V + rowid
        if not np.array_equal(np.sort(fwd), np.sort(rev)):
            raise ValueError("adjacency is not symmetric")

    # -- queries ------------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def edge_keys(self) -> np.ndarray:
        """Sorted int64 keys u*V+v over all directed edges."""
        V = self.vertex_count
        rowid = np.repeat(np.arange(V, dtype=np.int64), self.degrees())
        return rowid * V + self.indices

    def same_edges(self, other: "Graph") -> bool:
        return self.vertex_count == other.vertex_count and np.array_equal(
            self.indices, other.indices
        ) and np.array_equal(self.indptr, other.indptr)

    def __repr__(self) -> str:
        lab = ""
        if self.labels is not None:
            lab = f", J_{self.labels.q}({self.labels.n},{self.labels.D}) labels"
        return f"Graph({self.vertex_count} vertices, {self.edge_count} edges{lab})"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_sorted_edge_keys(cls, vertex_count, keys, labels=None, validated=False) -> "Graph":
        """Build from sorted directed-edge keys u*V+v (each direction present once).

        `validated=True` skips the full structural re-check for callers that
        construct symmetric key sets themselves (the duplicate check always runs).
        """
        V = int(vertex_count)
        if np.any(keys[1:] == keys[:-1]):
            raise ValueError("duplicate edge")
        indptr = np.searchsorted(keys, np.arange(V + 1, dtype=np.int64) * V)
        indices = (keys % V).astype(np.int32)
        return cls(V, indptr, indices, labels=labels, validated=validated)

    @classmethod
    def from_edges(cls, vertex_count, edges) -> "Graph":
        """Build from an iterable of undirected pairs (u, v), each edge once."""
        V = int(vertex_count)
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges)
        if e.size == 0:
            return cls(V, np.zeros(V + 1, np.int64), np.empty(0, np.int32))
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be (u, v) pairs")
        u, v = e[:, 0].astype(np.int64), e[:, 1].astype(np.int64)
        if np.any(u == v):
            raise ValueError("self-loop")
        if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= V:
            raise ValueError("vertex id out of range")
        keys = np.concatenate([u * V + v, v * V + u])
        keys.sort()
        return cls.from_sorted_edge_keys(V, keys)


def gather_csr(
    indptr: np.ndarray, indices: np.ndarray, verts: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated CSR rows of `verts` plus per-row segment lengths."""
    verts = np.asarray(verts, dtype=np.int64)
    starts = indptr[verts]
    lens = indptr[verts + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, indices.dtype), lens
    pos = np.repeat(starts, lens)
    cum = np.cumsum(lens) - lens
    pos += np.arange(total, dtype=np.int64) - np.repeat(cum, lens)
    return indices[pos], lens


def gather_neighbors(g: Graph, verts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated adjacency rows of `verts` plus per-vertex segment lengths."""
    return gather_csr(g.indptr, g.indices, verts)


# ---------------------------------------------------------------------------
# Grassmann construction


def grassmann_star_members(n: int, D: int, q: int, keys: np.ndarray):
    """Yield, per (D-1)-subspace Z, the sorted vertex ids of the star of Z
    (all D-subspaces containing Z).  Every edge lies in exactly one star."""
    for zrows in _iter_rref_rowtuples(n, D - 1, q):
        mkeys = np.fromiter(
            (rows_key(rows, n, q) for rows in extension_rowtuples(zrows, n, q)),
            dtype=np.int64,
        )
        mkeys.sort()
        ids = np.searchsorted(keys, mkeys)
        if np.any(ids >= len(keys)) or np.any(keys[ids] != mkeys):
            raise AssertionError("star member missing from vertex enumeration")
        yield ids.astype(np.int32)


def build_grassmann_graph(n: int, D: int, q: int, mem_cap: int | None = None) -> Graph:
    """The graph on all D-subspaces of F_q^n, adjacent when they meet in
    dimension D-1, with vertices in canonical (ascending-key) order.

    Edges are generated star-by-star: each adjacent pair {U, W} arises exactly
    once, from Z = U ∩ W.  A duplicate-key check certifies this, and the
    builder verifies the graph is b_0-regular for b_0 = q[D;1][n-D;1].
    """
    FieldSpec(q)
    if D < 1 or n < 2 * D:
        raise ValueError(f"need n >= 2D >= 2, got n={n}, D={D}")
    V = gauss_binomial(n, D, q)
    if V > MAX_VERTICES:
        raise BudgetError("vertex count exceeds 32-bit id range")
    k = q * gauss_bracket(D, q) * gauss_bracket(n - D, q)
    E = V * k // 2
    if mem_cap is not None:
        est = 28 * E + 24 * V
        if est > mem_cap:
            raise BudgetError(f"graph build needs ~{est} bytes > cap {mem_cap}")
    keys = enumerate_subspace_keys(n, D, q, mem_cap)
    t = gauss_bracket(n - D + 1, q)  # star size
    iu, iv = np.triu_indices(t, 1)
    per_star = len(iu)
    buf = np.empty(2 * E, dtype=np.int64)
    o = 0
    for ids in grassmann_star_members(n, D, q, keys):
        a = ids[iu].astype(np.int64)
        b = ids[iv].astype(np.int64)
        buf[o : o + per_star] = a * V + b
        buf[o + per_star : o + 2 * per_star] = b * V + a
        o += 2 * per_star
    if o != 2 * E:
        raise AssertionError("edge generation count mismatch")
    buf.sort()
    # both directions of every pair were written, so the key set is symmetric
    # and the duplicate check below certifies each edge arose from one star only
    g = Graph.from_sorted_edge_keys(
        V, buf, labels=GrassmannLabels(n, D, q, keys), validated=True
    )
    if np.any(g.degrees() != k):
        raise AssertionError("built graph is not b_0-regular")
    return g


# ---------------------------------------------------------------------------
# distance-regularity audit


@dataclass(frozen=True)
class DistanceRegularityAudit:
    is_drg: bool
    connected: bool
    diameter: int | None
    array: IntersectionArray | None
    counterexample: tuple | None  # (base, vertex, distance, kind, expected, got)
    mode: str
    bases_checked: int
    seed: int | None = None


def _bfs_levels(g: Graph, x: int) -> np.ndarray:
    dist = np.full(g.vertex_count, -1, np.int16)
    dist[x] = 0
    frontier = np.array([x], dtype=np.int64)
    d = 0
    while frontier.size:
        cand, _ = gather_neighbors(g, frontier)
        cand = cand[dist[cand] < 0]
        if cand.size == 0:
            break
        d += 1
        dist[cand] = d
        frontier = np.flatnonzero(dist == d)
    return dist


def _base_profile(g: Graph, x: int):
    """(eccentricity, c/a/b per-vertex count arrays, dist) or None if disconnected."""
    dist = _bfs_levels(g, x)
    if np.any(dist < 0):
        return None
    deg = g.degrees()
    du = np.repeat(dist, deg)
    nd = dist[g.indices]
    starts = g.indptr[:-1]
    cvec = np.add.reduceat((nd == du - 1).astype(np.int32), starts)
    avec = np.add.reduceat((nd == du).astype(np.int32), starts)
    bvec = np.add.reduceat((nd == du + 1).astype(np.int32), starts)
    return int(dist.max()), cvec, avec, bvec, dist


def audit_distance_regular(
    g: Graph, mode: str = "auto", sample: int = AUDIT_SAMPLE_DEFAULT, seed: int = 42
) -> DistanceRegularityAudit:
    """BFS from every (or a seeded sample of) base vertex and check that the
    c_i/a_i/b_i counts are constant per distance class, identical across bases.

    mode: "full", "sampled", or "auto" (full at <= 2000 vertices, sampled above).
    Failures are report content, never exceptions.
    """
    V = g.vertex_count
    if V == 0:
        raise ValueError("empty graph")
    if mode == "auto":
        mode = "full" if V <= AUDIT_FULL_CUTOFF else "sampled"
    if mode == "full":
        bases = np.arange(V, dtype=np.int64)
        used_seed = None
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        bases = np.sort(rng.choice(V, size=min(sample, V), replace=False))
        used_seed = seed
    else:
        raise ValueError(f"unknown audit mode {mode!r}")

    ref = None  # (ecc, c_by_class, a_by_class, b_by_class)
    for base in bases:
        prof = _base_profile(g, int(base))
        if prof is None:
            return DistanceRegularityAudit(
                False, False, None, None, None, mode, 1, used_seed
            )
        ecc, cvec, avec, bvec, dist = prof
        if ref is not None and ecc != ref[0]:
            return DistanceRegularityAudit(
                False, True, None, None,
                (int(base), int(base), 0, "eccentricity", ref[0], ecc),
                mode, len(bases), used_seed,
            )
        classes = []
        for i in range(ecc + 1):
            sel = dist == i
            for kind, vec in (("c", cvec), ("a", avec), ("b", bvec)):
                vals = vec[sel]
                expected = int(vals[0]) if ref is None else ref[{"c": 1, "a": 2, "b": 3}[kind]][i]
                bad = np.flatnonzero(vals != expected)
                if bad.size:
                    culprit = int(np.flatnonzero(sel)[bad[0]])
                    return DistanceRegularityAudit(
                        False, True, None, None,
                        (int(base), culprit, i, kind, int(expected), int(vec[culprit])),
                        mode, len(bases), used_seed,
                    )
            classes.append(
                (int(cvec[sel][0]), int(avec[sel][0]), int(bvec[sel][0]))
            )
        if ref is None:
            ref = (
                ecc,
                [c for c, _, _ in classes],
                [a for _, a, _ in classes],
                [b for _, _, b in classes],
            )
    ecc, cs, as_, bs = ref
    if ecc == 0:
        return DistanceRegularityAudit(True, True, 0, None, None, mode, len(bases), used_seed)
    arr = IntersectionArray(tuple(bs[:ecc]), tuple(cs[1 : ecc + 1]))
    return DistanceRegularityAudit(True, True, ecc, arr, None, mode, len(bases), used_seed)


# ---------------------------------------------------------------------------
# local graphs and eigenvalue bound


def local_graph(g: Graph, x: int) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the neighbors of x (order inherited from g) plus the
    map from local ids back to g's vertex ids."""
    nbrs = g.neighbors(x).astype(np.int64)
    t = len(nbrs)
    pos = np.full(g.vertex_count, -1, np.int32)
    pos[nbrs] = np.arange(t, dtype=np.int32)
    concat, lens = gather_neighbors(g, nbrs)
    loc = pos[concat]
    mask = loc >= 0
    seg = np.repeat(np.arange(t, dtype=np.int64), lens)
    counts = np.bincount(seg[mask], minlength=t)
    indptr = np.concatenate([[0], np.cumsum(counts)])
    labels = None
    if g.labels is not None:
        lab = g.labels
        labels = GrassmannLabels(lab.n, lab.D, lab.q, lab.keys[nbrs])
    return Graph(t, indptr, loc[mask], labels=labels, validated=True), nbrs


def min_eigenvalue(
    g: Graph, tol: float = 1e-8, seed: int = 42, max_iter: int = 100_000
) -> float:
    """Estimate the smallest adjacency eigenvalue by power iteration on
    c*Id - A with c = (max degree) + 1; deterministic for a fixed seed.

    The Rayleigh quotient never overshoots, so the returned value is always
    >= the true smallest eigenvalue, approaching it to within ~tol.
    """
    V = g.vertex_count
    if V == 0:
        raise ValueError("empty graph")
    deg = g.degrees()
    E2 = len(g.indices)
    c = float(deg.max() + 1) if V else 1.0
    starts = np.minimum(g.indptr[:-1], max(E2 - 1, 0))
    empty = deg == 0

    def shifted_matvec(vec):
        if E2 == 0:
            return c * vec
        out = np.add.reduceat(vec[g.indices], starts)
        out[empty] = 0.0
        return c * vec - out

    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(V)
    v /= np.linalg.norm(v)
    rq = 0.0
    for _ in range(max_iter):
        w = shifted_matvec(v)
        rq = float(v @ w)
        if np.linalg.norm(w - rq * v) <= tol * max(1.0, abs(rq)):
            return c - rq
        v = w / np.linalg.norm(w)
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (last estimate {c - rq})"
    )
