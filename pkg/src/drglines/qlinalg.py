"""Exact linear algebra over prime fields for subspace enumeration.

Vectors over F_q of length n are packed into Python ints in base q with
coordinate 0 as the most significant digit::

    code(a) = sum(a[j] * q**(n-1-j) for j in range(n))

so that numeric order on packed codes coincides with lexicographic order on
coefficient tuples.  For q = 2 a packed vector is simply a bitmask and row
operations reduce to XOR; the general prime path unpacks to coefficient
lists.  All arithmetic is exact — Python ints never overflow, which is why
no checked/fixed-width integer type appears here.

A subspace is represented by its reduced row echelon basis (unique), rows
ordered by pivot column, each row packed.  Canonical order over subspaces is
numeric order on ``key()``, the radix-(q^n) fold of the basis rows, which
matches lexicographic order on the row sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


class BudgetError(RuntimeError):
    """Raised when an operation would exceed its configured memory budget."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_q; rejects non-prime orders on construction."""

    q: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")


def gauss_bracket(j: int, b: int) -> int:
    """[j;1]_b = 1 + b + ... + b^(j-1); equals j when b = 1 and 0 when j = 0."""
    if j < 0:
        raise ValueError("bracket index must be nonnegative")
    if b < 1:
        raise ValueError("bracket base must be >= 1")
    if b == 1:
        return j
    return (b**j - 1) // (b - 1)


def gauss_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, as an exact int.

    Requires 0 <= k <= n and q >= 2.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if q < 2:
        raise ValueError("q must be >= 2")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# packed-vector helpers


def pack_vector(coeffs, n: int, q: int) -> int:
    if len(coeffs) != n:
        raise ValueError(f"expected {n} coordinates, got {len(coeffs)}")
    code = 0
    for a in coeffs:
        a = int(a) % q
        code = code * q + a
    return code


def unpack_vector(code: int, n: int, q: int) -> tuple[int, ...]:
    out = [0] * n
    for j in range(n - 1, -1, -1):
        code, r = divmod(code, q)
        out[j] = r
    return tuple(out)


def _pivot_exp(code: int, q: int) -> int:
    """Exponent of the leading (most significant) nonzero digit of code."""
    if code == 0:
        raise ValueError("zero vector has no pivot")
    if q == 2:
        return code.bit_length() - 1
    e = 0
    while code >= q:
        code //= q
        e += 1
    return e


# ---------------------------------------------------------------------------
# reduced row echelon form


def _rref_rows_q2(codes) -> tuple[int, ...]:
    rows: list[int] = []  # echelon during collection: sorted by leading bit, descending
    for v in codes:
        for r in rows:  # descending pivots, so one pass fully reduces v
            if (v >> (r.bit_length() - 1)) & 1:
                v ^= r
        if v:
            i = 0
            while i < len(rows) and rows[i] > v:
                i += 1
            rows.insert(i, v)
    # back-eliminate above pivots, bottom row (smallest pivot) first
    for i in range(len(rows) - 1, -1, -1):
        r = rows[i]
        p = r.bit_length() - 1
        for j in range(i):
            if (rows[j] >> p) & 1:
                rows[j] ^= r
    return tuple(rows)


def _rref_rows_modq(vecs: list[list[int]], q: int) -> list[list[int]]:
    """RREF over F_q on coefficient lists; maintains the full reduced form
    after every insertion, so rows always have zeros at each other's pivots."""
    n = len(vecs[0]) if vecs else 0
    rows: list[list[int]] = []
    pivots: list[int] = []  # pivot column per row, ascending
    for v in vecs:
        v = [a % q for a in v]
        for r, p in zip(rows, pivots):
            c = v[p]
            if c:
                for j in range(n):
                    v[j] = (v[j] - c * r[j]) % q
        piv = next((j for j in range(n) if v[j]), None)
        if piv is None:
            continue
        inv = pow(v[piv], q - 2, q)
        v = [(a * inv) % q for a in v]
        for r in rows:
            c = r[piv]
            if c:
                for j in range(n):
                    r[j] = (r[j] - c * v[j]) % q
        i = 0
        while i < len(rows) and pivots[i] < piv:
            i += 1
        rows.insert(i, v)
        pivots.insert(i, piv)
    return rows


class Subspace:
    """A subspace of F_q^n held in canonical reduced row echelon form."""

    __slots__ = ("n", "q", "rows")

    def __init__(self, n: int, q: int, rows: tuple[int, ...]):
        self.n = n
        self.q = q
        self.rows = rows

    @classmethod
    def from_vectors(cls, vectors, n: int, q: int) -> "Subspace":
        """Canonicalize a spanning set given as coefficient sequences or packed codes."""
        FieldSpec(q)
        codes = [v if isinstance(v, int) else pack_vector(v, n, q) for v in vectors]
        if any(not 0 <= c < q**n for c in codes):
            raise ValueError("vector code out of range for ambient space")
        if q == 2:
            rows = _rref_rows_q2(codes)
        else:
            lists = [list(unpack_vector(c, n, q)) for c in codes]
            rows = tuple(pack_vector(r, n, q) for r in _rref_rows_modq(lists, q))
        return cls(n, q, rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def key(self) -> int:
        Q = self.q**self.n
        k = 0
        for r in self.rows:
            k = k * Q + r
        return k

    def basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(unpack_vector(r, self.n, self.q) for r in self.rows)

    def vectors(self):
        """All q^dim member vectors as packed codes (small subspaces only)."""
        members = [0]
        for r in self.rows:
            if self.q == 2:
                members = members + [m ^ r for m in members]
            else:
                rv = unpack_vector(r, self.n, self.q)
                new = []
                for c in range(1, self.q):
                    scaled = tuple((c * a) % self.q for a in rv)
                    for m in members:
                        mv = unpack_vector(m, self.n, self.q)
                        new.append(pack_vector([x + y for x, y in zip(mv, scaled)], self.n, self.q))
                members = members + new
        return sorted(members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.q == other.q
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.q, self.rows))

    def __lt__(self, other: "Subspace") -> bool:
        return self.key() < other.key()

    def __repr__(self) -> str:
        mat = ",".join("".join(str(a) for a in row) for row in self.basis())
        return f"Subspace({self.dim}d in F{self.q}^{self.n}: {mat})"


def rref(vectors, n: int, q: int) -> Subspace:
    """Canonical subspace spanned by the given vectors (alias of from_vectors)."""
    return Subspace.from_vectors(vectors, n, q)


def intersect_dim(u: Subspace, w: Subspace) -> int:
    """dim(U ∩ W) via rank of the stacked bases: dim U + dim W - rank."""
    if u.n != w.n or u.q != w.q:
        raise ValueError("subspaces live in different ambient spaces")
    stacked = Subspace.from_vectors(u.rows + w.rows, u.n, u.q)
    return u.dim + w.dim - stacked.dim


# ---------------------------------------------------------------------------
# enumeration


def _iter_rref_rowtuples(n: int, k: int, q: int):
    """Yield the packed row tuple of every k-dim RREF basis, by pivot pattern.

    Every subspace appears exactly once: the RREF shape (pivot columns
    c_0 < ... < c_{k-1}, zeros above/below pivots, free entries only at
    non-pivot columns to the right of each row's pivot) is a bijection.
    """
    weights = [q ** (n - 1 - j) for j in range(n)]
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        base = [weights[c] for c in pivots]
        free = [
            (i, weights[j])
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivset
        ]
        if not free:
            yield tuple(base)
            continue
        for assign in itertools.product(range(q), repeat=len(free)):
            rows = list(base)
            for (i, wgt), a in zip(free, assign):
                if a:
                    rows[i] += a * wgt
            yield tuple(rows)


def enumeration_budget_bytes(n: int, k: int, q: int) -> int:
    """Rough in-memory footprint estimate for enumerate_subspaces."""
    count = gauss_binomial(n, k, q)
    return count * (8 * k + 120)


def enumerate_subspaces(n: int, k: int, q: int, mem_cap: int | None = None) -> list[Subspace]:
    """All k-dim subspaces of F_q^n in canonical order (ascending key).

    Raises BudgetError if the estimated footprint exceeds mem_cap bytes.
    """
    FieldSpec(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if mem_cap is not None:
        est = enumeration_budget_bytes(n, k, q)
        if est > mem_cap:
            raise BudgetError(
                f"enumerating {gauss_binomial(n, k, q)} subspaces needs ~{est} bytes"
                f" > cap {mem_cap}"
            )
    subs = [Subspace(n, q, rows) for rows in _iter_rref_rowtuples(n, k, q)]
    subs.sort(key=Subspace.key)
    return subs


def enumerate_subspace_keys(n: int, k: int, q: int, mem_cap: int | None = None) -> np.ndarray:
    """Sorted int64 array of subspace keys; fast path used by graph builders.

    Valid only while keys fit in int64 (k*n*log2(q) < 63).
    """
    FieldSpec(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k * n * np.log2(q) >= 63:
        raise ValueError("subspace keys do not fit in int64 at this size")
    count = gauss_binomial(n, k, q)
    if mem_cap is not None and count * 8 > mem_cap:
        raise BudgetError(f"{count} subspace keys exceed cap {mem_cap}")
    Q = q**n
    out = np.empty(count, dtype=np.int64)
    for i, rows in enumerate(_iter_rref_rowtuples(n, k, q)):
        key = 0
        for r in rows:
            key = key * Q + r
        out[i] = key
    out.sort()
    return out


def rows_key(rows, n: int, q: int) -> int:
    """Canonical integer key of an RREF row tuple (same fold as Subspace.key)."""
    Q = q**n
    key = 0
    for r in rows:
        key = key * Q + r
    return key


def key_to_rows(key: int, k: int, n: int, q: int) -> tuple[int, ...]:
    """Inverse of Subspace.key() given the dimension."""
    Q = q**n
    rows = []
    for _ in range(k):
        key, r = divmod(key, Q)
        rows.append(r)
    return tuple(reversed(rows))


# ---------------------------------------------------------------------------
# extensions (one dimension up), used for star construction


def extension_rowtuples(rows: tuple[int, ...], n: int, q: int):
    """Yield the RREF row tuple of every (k+1)-dim superspace of the given RREF basis.

    Superspaces of Z correspond bijectively to the nonzero vectors of F_q^n
    reduced modulo Z (zero at Z's pivot columns, leading coefficient 1), i.e.
    to the points of the quotient space.  Each extension is produced by
    inserting such a vector into the basis and back-eliminating its pivot.
    """
    k = len(rows)
    pivcols = [n - 1 - _pivot_exp(r, q) for r in rows]
    pivset = set(pivcols)
    freecols = [j for j in range(n) if j not in pivset]
    weights = [q ** (n - 1 - j) for j in freecols]
    nf = len(freecols)
    if q == 2:
        for bits in range(1, 1 << nf):
            v = 0
            for t in range(nf):
                if (bits >> t) & 1:
                    v += weights[t]
            p = v.bit_length() - 1
            new = []
            placed = False
            for r in rows:
                if not placed and r < v:
                    new.append(v)
                    placed = True
                new.append(r ^ v if (r >> p) & 1 else r)
            if not placed:
                new.append(v)
            yield tuple(new)
    else:
        base_lists = [list(unpack_vector(r, n, q)) for r in rows]
        for assign in itertools.product(range(q), repeat=nf):
            lead = next((t for t in range(nf) if assign[t]), None)
            if lead is None or assign[lead] != 1:
                continue  # leading coefficient normalized to 1
            vlist = [0] * n
            for t in range(nf):
                vlist[freecols[t]] = assign[t]
            piv = freecols[lead]
            merged = []
            placed = False
            for r, pc in zip(base_lists, pivcols):
                if not placed and piv < pc:
                    merged.append(vlist)
                    placed = True
                c = r[piv]
                if c:
                    merged.append([(a - c * b) % q for a, b in zip(r, vlist)])
                else:
                    merged.append(r)
            if not placed:
                merged.append(vlist)
            yield tuple(pack_vector(r, n, q) for r in merged)


def extensions(z: Subspace) -> list[Subspace]:
    """All (dim+1)-dimensional superspaces of z, in canonical order."""
    if z.dim >= z.n:
        return []
    out = [Subspace(z.n, z.q, rows) for rows in extension_rowtuples(z.rows, z.n, z.q)]
    out.sort(key=Subspace.key)
    return out
