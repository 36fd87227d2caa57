"""Partial linear spaces and the recognition conditions for Grassmann-type
point-line geometries.

A partial linear space is a point set with a family of point subsets (lines)
such that two points lie on at most one common line.  The five-condition
checker certifies the regularity axioms under which such a geometry is the
subspace geometry recovered from a distance-regular graph: big lines, many
lines per point, and constant line counts between near-incident pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import Graph, _bfs_levels, gather_csr, gather_neighbors, grassmann_star_members

EXHAUSTIVE_LIMIT = 100_000
SAMPLE_PAIRS_DEFAULT = 1_000_000


class LinearityError(ValueError):
    """Two lines share two points; carries the offending pair and lines."""

    def __init__(self, p: int, r: int, line_a: int, line_b: int):
        self.pair = (p, r)
        self.lines = (line_a, line_b)
        super().__init__(
            f"points {p} and {r} lie on two lines (ids {line_a} and {line_b})"
        )


@dataclass(frozen=True)
class PartialLinearSpace:
    """Immutable point-line incidence structure with a point -> lines index."""

    point_count: int
    lines: tuple[tuple[int, ...], ...]
    pl_indptr: np.ndarray  # CSR: lines through each point
    pl_indices: np.ndarray

    @property
    def line_count(self) -> int:
        return len(self.lines)

    def lines_of_point(self, p: int) -> np.ndarray:
        return self.pl_indices[self.pl_indptr[p] : self.pl_indptr[p + 1]]

    def lines_per_point(self) -> np.ndarray:
        return np.diff(self.pl_indptr)


def build_pls(point_count: int, lines) -> PartialLinearSpace:
    """Validate and index a line family: every line has >= 2 in-range points
    without repeats, no two lines coincide, and no two points lie on two
    common lines (LinearityError with a witness otherwise)."""
    canon = []
    seen = {}
    for li, ln in enumerate(lines):
        arr = np.asarray(sorted(int(v) for v in ln), dtype=np.int64)
        if len(arr) < 2:
            raise ValueError(f"line {li} has fewer than two points")
        if len(np.unique(arr)) != len(arr):
            raise ValueError(f"line {li} repeats a point")
        if arr[0] < 0 or arr[-1] >= point_count:
            raise ValueError(f"line {li} has a point id out of range")
        key = arr.tobytes()
        if key in seen:
            raise ValueError(f"lines {seen[key]} and {li} are identical")
        seen[key] = li
        canon.append(arr)

    # pairwise-intersection check: a colliding point pair names two lines
    if canon:
        sizes = np.array([len(a) for a in canon], dtype=np.int64)
        pair_counts = sizes * (sizes - 1) // 2
        offsets = np.concatenate([[0], np.cumsum(pair_counts)])
        keys = np.empty(int(offsets[-1]), dtype=np.int64)
        for li, arr in enumerate(canon):
            iu, iv = np.triu_indices(len(arr), 1)
            keys[offsets[li] : offsets[li + 1]] = arr[iu] * point_count + arr[iv]
        order = np.argsort(keys, kind="stable")
        skeys = keys[order]
        dup = np.flatnonzero(skeys[1:] == skeys[:-1])
        if len(dup):
            k = int(skeys[dup[0]])
            ia, ib = int(order[dup[0]]), int(order[dup[0] + 1])
            la = int(np.searchsorted(offsets, ia, side="right") - 1)
            lb = int(np.searchsorted(offsets, ib, side="right") - 1)
            raise LinearityError(k // point_count, k % point_count, la, lb)

    # point -> lines CSR
    flat_pts = (
        np.concatenate(canon) if canon else np.empty(0, dtype=np.int64)
    )
    flat_lines = np.repeat(
        np.arange(len(canon), dtype=np.int64),
        [len(a) for a in canon] if canon else [],
    )
    order = np.argsort(flat_pts, kind="stable")
    indices = flat_lines[order].astype(np.int32)
    indptr = np.searchsorted(flat_pts[order], np.arange(point_count + 1)).astype(
        np.int64
    )
    return PartialLinearSpace(
        point_count=point_count,
        lines=tuple(tuple(int(v) for v in a) for a in canon),
        pl_indptr=indptr,
        pl_indices=indices,
    )


def pls_point_graph(pls: PartialLinearSpace) -> Graph:
    """Collinearity graph: points adjacent iff they share a line.  In a
    partial linear space each collinear pair occurs exactly once."""
    N = pls.point_count
    parts = []
    for arr in pls.lines:
        a = np.asarray(arr, dtype=np.int64)
        iu, iv = np.triu_indices(len(a), 1)
        parts.append(a[iu] * N + a[iv])
        parts.append(a[iv] * N + a[iu])
    keys = (
        np.sort(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
    )
    return Graph.from_sorted_edge_keys(N, keys)


# ---------------------------------------------------------------------------
# recognition conditions


@dataclass(frozen=True)
class RcsReport:
    """Outcome of the five recognition conditions.

    Conditions: (1) every line has at least q^2+q+1 points; (2) every point
    is on strictly more than q+1 lines; (3) for a point p off a line L but
    collinear with a point of L, exactly q+1 lines through p meet L; (4) for
    points p, p' at distance two in the collinearity graph, exactly q+1 lines
    through p' contain a point collinear... are at distance one from p; (5)
    the collinearity graph is connected.
    """

    q: int
    mode: str  # "exhaustive" or "sampled"
    seed: int
    cond1_ok: bool
    min_line_size: int
    cond2_ok: bool
    min_lines_per_point: int
    cond3_ok: bool
    cond3_checked: int
    cond3_witnesses: tuple[tuple[int, int, int], ...]  # (line, point, count)
    cond4_ok: bool
    cond4_checked: int
    cond4_witnesses: tuple[tuple[int, int, int], ...]  # (p, p2, count)
    cond5_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.cond1_ok
            and self.cond2_ok
            and self.cond3_ok
            and self.cond4_ok
            and self.cond5_ok
        )


def verify_rcs(
    pls: PartialLinearSpace,
    q: int,
    point_graph: Graph | None = None,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    sample_pairs: int = SAMPLE_PAIRS_DEFAULT,
    seed: int = 42,
) -> RcsReport:
    """Check the five recognition conditions of a partial linear space.

    All line/point incidences are checked exhaustively when the space has at
    most `exhaustive_limit` points; above that, conditions (3) and (4) are
    spot-checked on a seeded sample of roughly `sample_pairs` near-incident
    pairs, and the report discloses the mode.  Conditions (1), (2) and (5)
    are always exhaustive.
    """
    N = pls.point_count
    if N == 0 or pls.line_count == 0:
        raise ValueError("need a nonempty point set and at least one line")
    g = point_graph if point_graph is not None else pls_point_graph(pls)
    if g.vertex_count != N:
        raise ValueError("point graph does not match the space")

    sizes = np.array([len(a) for a in pls.lines], dtype=np.int64)
    min_size = int(sizes.min())
    cond1 = min_size >= q * q + q + 1

    per_point = pls.lines_per_point()
    min_lpp = int(per_point.min()) if N else 0
    cond2 = min_lpp > q + 1

    mode = "exhaustive" if N <= exhaustive_limit else "sampled"
    rng = np.random.default_rng(seed)

    # --- condition (3): per line L, every point at distance one from L lies
    # on exactly q+1 lines meeting L
    nl = pls.line_count
    line_mask = np.zeros(nl, dtype=bool)
    mark = np.zeros(N, dtype=np.int8)
    cond3_checked = 0
    cond3_wit: list[tuple[int, int, int]] = []
    if mode == "exhaustive":
        check_lines = range(nl)
    else:
        per_line = max(1, int(np.mean([len(a) for a in pls.lines])) * 40)
        take = max(1, min(nl, sample_pairs // per_line))
        check_lines = sorted(rng.choice(nl, size=take, replace=False).tolist())
    for li in check_lines:
        pts = np.asarray(pls.lines[li], dtype=np.int64)
        meet, _ = gather_csr(pls.pl_indptr, pls.pl_indices, pts)
        line_mask[meet] = True
        line_mask[li] = False
        mark[pts] = 1
        cand, _ = gather_neighbors(g, pts)
        fresh = cand[mark[cand] == 0]
        mark[fresh] = 2
        dist1 = np.flatnonzero(mark == 2)
        counts = _masked_line_counts(pls, dist1, line_mask)
        bad = np.flatnonzero(counts != q + 1)
        for b in bad[: 10 - len(cond3_wit)]:
            cond3_wit.append((int(li), int(dist1[b]), int(counts[b])))
        cond3_checked += len(dist1)
        line_mask[meet] = False
        mark[pts] = 0
        mark[dist1] = 0
        if len(cond3_wit) >= 10:
            break
    cond3 = not cond3_wit

    # --- condition (4): per point p', every point p at distance two sees
    # exactly q+1 of its own lines at distance one from p'
    cond4_checked = 0
    cond4_wit: list[tuple[int, int, int]] = []
    if mode == "exhaustive":
        check_points = range(N)
    else:
        per_pt = max(1, int(g.degrees().mean()) * 40)
        take = max(1, min(N, sample_pairs // per_pt))
        check_points = sorted(rng.choice(N, size=take, replace=False).tolist())
    for p2 in check_points:
        nbrs = g.neighbors(p2).astype(np.int64)
        # lines at distance one from p2: lines on a neighbour, minus p2's own
        near, _ = gather_csr(pls.pl_indptr, pls.pl_indices, nbrs)
        line_mask[near] = True
        own = pls.lines_of_point(p2)
        line_mask[own] = False
        mark[p2] = 1
        mark[nbrs] = 1
        cand, _ = gather_neighbors(g, nbrs)
        fresh = cand[mark[cand] == 0]
        mark[fresh] = 2
        dist2 = np.flatnonzero(mark == 2)
        counts = _masked_line_counts(pls, dist2, line_mask)
        bad = np.flatnonzero(counts != q + 1)
        for b in bad[: 10 - len(cond4_wit)]:
            cond4_wit.append((int(dist2[b]), int(p2), int(counts[b])))
        cond4_checked += len(dist2)
        line_mask[near] = False
        mark[p2] = 0
        mark[nbrs] = 0
        mark[dist2] = 0
        if len(cond4_wit) >= 10:
            break
    cond4 = not cond4_wit

    dist = _bfs_levels(g, 0)
    cond5 = bool((dist >= 0).all())

    return RcsReport(
        q=q,
        mode=mode,
        seed=seed,
        cond1_ok=cond1,
        min_line_size=min_size,
        cond2_ok=cond2,
        min_lines_per_point=min_lpp,
        cond3_ok=cond3,
        cond3_checked=cond3_checked,
        cond3_witnesses=tuple(cond3_wit),
        cond4_ok=cond4,
        cond4_checked=cond4_checked,
        cond4_witnesses=tuple(cond4_wit),
        cond5_ok=cond5,
    )


def _masked_line_counts(
    pls: PartialLinearSpace, pts: np.ndarray, line_mask: np.ndarray
) -> np.ndarray:
    """For each point, how many of its lines are flagged in line_mask."""
    if len(pts) == 0:
        return np.empty(0, dtype=np.int64)
    rows, lens = gather_csr(pls.pl_indptr, pls.pl_indices, pts)
    hits = line_mask[rows].astype(np.int64)
    if len(hits) == 0:
        return np.zeros(len(pts), dtype=np.int64)
    bounds = np.concatenate([[0], np.cumsum(lens)[:-1]])
    out = np.add.reduceat(hits, np.minimum(bounds, len(hits) - 1))
    out[lens == 0] = 0
    return out


# ---------------------------------------------------------------------------
# oracle and comparison


def grassmann_line_oracle(n: int, D: int, q: int, keys: np.ndarray):
    """The classical line system of J_q(n, D) in vertex ids: one line per
    (D-1)-dimensional subspace, consisting of all members containing it."""
    lines = [
        tuple(int(v) for v in members)
        for members in grassmann_star_members(n, D, q, keys)
    ]
    return tuple(sorted(lines))


@dataclass(frozen=True)
class LineSetComparison:
    equal: bool
    count_a: int
    count_b: int
    only_in_a: tuple[tuple[int, ...], ...]
    only_in_b: tuple[tuple[int, ...], ...]


def compare_line_sets(a, b, max_witnesses: int = 10) -> LineSetComparison:
    """Set comparison of two line families (order-insensitive), with up to
    `max_witnesses` one-sided lines reported per side."""
    sa = {tuple(sorted(int(v) for v in ln)) for ln in a}
    sb = {tuple(sorted(int(v) for v in ln)) for ln in b}
    return LineSetComparison(
        equal=sa == sb,
        count_a=len(sa),
        count_b=len(sb),
        only_in_a=tuple(sorted(sa - sb)[:max_witnesses]),
        only_in_b=tuple(sorted(sb - sa)[:max_witnesses]),
    )
