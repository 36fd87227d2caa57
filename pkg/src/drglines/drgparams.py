"""Exact parameter calculus for distance-regular graphs with classical parameters.

Intersection arrays, spectra, the Grassmann specialization, the exceptional-case
classifier, and the inequality logic behind the line-space existence conditions.
Everything in this module is exact integer / rational arithmetic; no floats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .qlinalg import FieldSpec, gauss_binomial, gauss_bracket


class InfeasibleParams(ValueError):
    """A classical-parameter tuple whose derived intersection numbers go nonpositive."""


@dataclass(frozen=True)
class ClassicalParams:
    """Classical parameter tuple (D, b, alpha, beta)."""

    D: int
    b: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.D < 1:
            raise ValueError("diameter D must be >= 1")
        if self.b < 1:
            raise ValueError("base b must be >= 1")


@dataclass(frozen=True)
class IntersectionArray:
    """Intersection array {b_0..b_{D-1}; c_1..c_D} with derived a_i.

    Entries must be nonnegative and every derived a_i = k - b_i - c_i
    nonnegative (with b_D = 0, c_0 = 0, a_0 = 0 by convention).
    """

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.b) != len(self.c) or not self.b:
            raise ValueError("need b_0..b_{D-1} and c_1..c_D of equal length >= 1")
        if any(x < 0 for x in self.b) or any(x < 0 for x in self.c):
            raise ValueError("intersection numbers must be nonnegative")
        if any(x < 0 for x in self.a):
            raise ValueError("derived a_i went negative; not a valid array")

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    @property
    def a(self) -> tuple[int, ...]:
        """a_0..a_D (a_0 = 0 always)."""
        out = [0]
        for i in range(1, self.D + 1):
            bi = self.b[i] if i < self.D else 0
            out.append(self.k - bi - self.c[i - 1])
        return tuple(out)

    def b_at(self, i: int) -> int:
        return self.b[i] if 0 <= i < self.D else 0

    def c_at(self, i: int) -> int:
        return self.c[i - 1] if 1 <= i <= self.D else 0

    def __str__(self) -> str:
        return "{%s; %s}" % (
            ",".join(map(str, self.b)),
            ",".join(map(str, self.c)),
        )


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, natural (strictly decreasing) order."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        thetas = [t for t, _ in self.entries]
        if any(x >= y for x, y in zip(thetas[1:], thetas)):
            raise ValueError("eigenvalues must be strictly decreasing")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")

    @property
    def thetas(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    def order(self) -> int:
        return sum(self.multiplicities)

    def trace(self) -> int:
        return sum(t * m for t, m in self.entries)


def classical_intersection_numbers(p: ClassicalParams) -> IntersectionArray:
    """Intersection array of a graph with classical parameters (D, b, alpha, beta).

    b_i = ([D;1] - [i;1]) (beta - alpha [i;1]) for 0 <= i <= D-1 and
    c_i = [i;1] (1 + alpha [i-1;1]) for 1 <= i <= D, brackets base b.
    Raises InfeasibleParams when any derived entry is nonpositive.
    """
    D, b, al, be = p.D, p.b, p.alpha, p.beta
    bs = []
    for i in range(D):
        bi = (gauss_bracket(D, b) - gauss_bracket(i, b)) * (be - al * gauss_bracket(i, b))
        if bi <= 0:
            raise InfeasibleParams(f"b_{i} = {bi} <= 0 for {p}")
        bs.append(bi)
    cs = []
    for i in range(1, D + 1):
        ci = gauss_bracket(i, b) * (1 + al * gauss_bracket(i - 1, b))
        if ci <= 0:
            raise InfeasibleParams(f"c_{i} = {ci} <= 0 for {p}")
        cs.append(ci)
    arr = IntersectionArray(tuple(bs), tuple(cs))
    if any(x < 0 for x in arr.a):
        raise InfeasibleParams(f"derived a_i negative for {p}")
    return arr


# ---------------------------------------------------------------------------
# Grassmann specialization


def grassmann_params(n: int, D: int, q: int) -> ClassicalParams:
    """Classical parameters (D, q, q, [n-D+1;1]_q - 1) of J_q(n, D); needs n >= 2D >= 2."""
    FieldSpec(q)
    if D < 1 or n < 2 * D:
        raise ValueError(f"need n >= 2D >= 2, got n={n}, D={D}")
    return ClassicalParams(D, q, q, gauss_bracket(n - D + 1, q) - 1)


def grassmann_array(n: int, D: int, q: int) -> IntersectionArray:
    """Intersection array of J_q(n, D) by the direct product formulas:
    b_{j-1} = q^(2j-1) [n-D-j+1;1] [D-j+1;1],  c_j = [j;1]^2."""
    FieldSpec(q)
    if D < 1 or n < 2 * D:
        raise ValueError(f"need n >= 2D >= 2, got n={n}, D={D}")
    bs = tuple(
        q ** (2 * j - 1) * gauss_bracket(n - D - j + 1, q) * gauss_bracket(D - j + 1, q)
        for j in range(1, D + 1)
    )
    cs = tuple(gauss_bracket(j, q) ** 2 for j in range(1, D + 1))
    return IntersectionArray(bs, cs)


def grassmann_spectrum(n: int, D: int, q: int) -> Spectrum:
    """Spectrum of J_q(n, D): theta_j = q^(j+1)[n-D-j;1][D-j;1] - [j;1] with
    multiplicity m_j = [n;j]_q - [n;j-1]_q.  Validates zero trace and total order."""
    FieldSpec(q)
    if D < 1 or n < 2 * D:
        raise ValueError(f"need n >= 2D >= 2, got n={n}, D={D}")
    entries = []
    for j in range(D + 1):
        theta = q ** (j + 1) * gauss_bracket(n - D - j, q) * gauss_bracket(D - j, q) - gauss_bracket(j, q)
        mult = gauss_binomial(n, j, q) - (gauss_binomial(n, j - 1, q) if j >= 1 else 0)
        entries.append((theta, mult))
    spec = Spectrum(tuple(entries))
    if spec.order() != gauss_binomial(n, D, q):
        raise AssertionError("multiplicities do not sum to the vertex count")
    if spec.trace() != 0:
        raise AssertionError("spectrum trace is nonzero")
    return spec


def verify_tridiagonal_spectrum(arr: IntersectionArray, spec: Spectrum) -> bool:
    """Exact check that every claimed eigenvalue annihilates the tridiagonal
    intersection matrix L (sub/diag/super = c_i, a_i, b_i), via the integer
    three-term determinant recurrence for det(L - theta*I)."""
    D = arr.D
    if len(spec.entries) != D + 1:
        raise ValueError("spectrum size does not match array diameter")
    a = arr.a
    for theta in spec.thetas:
        prev2, prev1 = 1, a[0] - theta  # minors of order 0 and 1
        for i in range(1, D + 1):
            cur = (a[i] - theta) * prev1 - arr.c_at(i) * arr.b_at(i - 1) * prev2
            prev2, prev1 = prev1, cur
        if prev1 != 0:
            return False
    return True


def local_eigen_lower_bound(arr: IntersectionArray, spec: Spectrum) -> Fraction:
    """Exact lower bound -b_1/(theta_1 + 1) - 1 for the smallest eigenvalue of
    any local graph; requires D >= 3 (the lemma's hypothesis)."""
    if arr.D < 3:
        raise ValueError("bound stated only for D >= 3")
    if len(spec.entries) != arr.D + 1:
        raise ValueError("spectrum size does not match array diameter")
    theta1 = spec.thetas[1]
    if theta1 == -1:
        raise ZeroDivisionError("theta_1 = -1 makes the bound undefined")
    return Fraction(-arr.b[1], theta1 + 1) - 1


class MetschCase(enum.Enum):
    """Which exceptional clause (if any) an (n, D, q) Grassmann tuple falls under."""

    UNIQUE = "Unique"
    N2D = "N2D"
    N2D_PLUS_1 = "N2DPlus1"
    N2D_PLUS_2_Q_IN_23 = "N2DPlus2_qIn23"
    N2D_PLUS_3_Q2 = "N2DPlus3_q2"


def metsch_exception_case(n: int, D: int, q: int) -> MetschCase:
    """Classify (n, D, q) into the known exceptional cases; D >= 3 only."""
    FieldSpec(q)
    if D < 3:
        raise ValueError("classification stated only for D >= 3")
    if n < 2 * D:
        raise ValueError(f"need n >= 2D, got n={n}, D={D}")
    if n == 2 * D:
        return MetschCase.N2D
    if n == 2 * D + 1:
        return MetschCase.N2D_PLUS_1
    if n == 2 * D + 2 and q in (2, 3):
        return MetschCase.N2D_PLUS_2_Q_IN_23
    if n == 2 * D + 3 and q == 2:
        return MetschCase.N2D_PLUS_3_Q2
    return MetschCase.UNIQUE


# ---------------------------------------------------------------------------
# line-space existence conditions


def kmn_parameters(lam: int) -> tuple[int, int]:
    """(m, n) such that a graph with smallest eigenvalue >= -lam and large enough
    cliques is K~_{m+1,n}-free: m = lam^2-lam, n = lam^4-2lam^3+2lam^2-2lam+2."""
    if lam < 2:
        raise ValueError("lambda must be >= 2")
    return lam * lam - lam, lam**4 - 2 * lam**3 + 2 * lam * lam - 2 * lam + 2


def condition_margins(s: int, m: int, n: int, e: int, k: int, w: int) -> tuple[int, int, int]:
    """Exact margins of conditions (3), (4), (5): positive means satisfied.

    (3)  w > (s-1)e + ms - 1          -> margin w - (s-1)e - ms + 1
    (4)  k < (s+1)(w+1) - s(s+1)e/2   -> margin (s+1)(w+1) - s(s+1)e/2 - k
    (5)  ms + 1 > e + n               -> margin ms + 1 - e - n

    s(s+1) is always even, so margin (4) is an exact integer.
    """
    m3 = w - (s - 1) * e - m * s + 1
    m4 = (s + 1) * (w + 1) - s * (s + 1) // 2 * e - k
    m5 = m * s + 1 - e - n
    return m3, m4, m5


@dataclass(frozen=True)
class MainConditionsReport:
    """Exact margin report for the existence conditions at (D, beta), q = 2."""

    D: int
    beta: int
    ell: int | None  # exponent with beta = 2^(D+ell+1) - 2, when of that form
    s: int
    m: int
    n: int
    e: int
    k: int
    w: int
    cond3_margin: int
    cond4_margin: int
    cond5_margin: int
    e_gt_m: bool
    s_integral: bool
    lambda_bound: Fraction
    kmn_free_params: tuple[int, int] = field(default=(7, 41))

    @property
    def margins(self) -> tuple[int, int, int]:
        return (self.cond3_margin, self.cond4_margin, self.cond5_margin)

    @property
    def passed(self) -> bool:
        return (
            all(x > 0 for x in self.margins)
            and self.e_gt_m
            and self.s_integral
            and self.lambda_bound >= -3
        )


def theorem_main_conditions(D: int, beta: int) -> MainConditionsReport:
    """Check the q=2 existence conditions with s = 5*2^D/4, m = 6, n = 41, e = 8.

    Requires D >= 3 and beta >= 2^(D+4) - 2; k = (2^D - 1) beta and
    w = beta - 1 + 2(2^D - 2) are the valency and the common-neighbor count
    of an adjacent pair for classical parameters (D, 2, 2, beta).
    """
    if D < 3:
        raise ValueError("need D >= 3")
    if beta < 2 ** (D + 4) - 2:
        raise ValueError(f"beta = {beta} below hypothesis threshold {2**(D+4)-2}")
    s4 = 5 * 2**D  # 4s; integral s needs D >= 2
    s_integral = s4 % 4 == 0
    s = s4 // 4
    if not s_integral:
        raise ValueError("s = 5*2^D/4 is not an integer at this D")
    m, n, e = 6, 41, 8
    k = (2**D - 1) * beta
    w = beta - 1 + 2 * (2**D - 2)
    m3, m4, m5 = condition_margins(s, m, n, e, k, w)
    # cross-check k, w, and the local eigenvalue bound against the parameter calculus
    arr = classical_intersection_numbers(ClassicalParams(D, 2, 2, beta))
    spec_thetas_1 = gauss_bracket(D - 1, 2) * (beta - 2) - 1  # theta_1 for these parameters
    assert arr.k == k and arr.a[1] == w
    lam_bound = Fraction(-arr.b[1], spec_thetas_1 + 1) - 1
    ell = None
    t = beta + 2
    if t & (t - 1) == 0:  # power of two
        exp = t.bit_length() - 1
        if exp >= D + 4:
            ell = exp - (D + 1)
    return MainConditionsReport(
        D=D,
        beta=beta,
        ell=ell,
        s=s,
        m=m,
        n=n,
        e=e,
        k=k,
        w=w,
        cond3_margin=m3,
        cond4_margin=m4,
        cond5_margin=m5,
        e_gt_m=e > m,
        s_integral=s_integral,
        lambda_bound=lam_bound,
    )


def feasible_s_search(
    p: ClassicalParams, m: int, n: int, e: int, s_max: int | None = None
) -> list[int]:
    """All integers s in [1, s_max] satisfying conditions (3), (4), (5)
    simultaneously, with k and w fixed by the parameter tuple.  An empty list
    certifies infeasibility up to s_max.  Default s_max is 4*2^D."""
    if s_max is None:
        s_max = 4 * 2**p.D
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    arr = classical_intersection_numbers(p)
    k, w = arr.k, arr.a[1]
    out = []
    for s in range(1, s_max + 1):
        if all(x > 0 for x in condition_margins(s, m, n, e, k, w)):
            out.append(s)
    return out
