"""Ground truth in exact rational arithmetic.

Everything here works on :class:`fractions.Fraction` matrices (lists of
rows).  The routines are O(n^3) or worse with growing integer sizes and are
meant for desk-scale problems only; :data:`MAX_ORDER` bounds what the
command-line tool will hand to them.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (
    ExchangeRequiredError,
    NotSquarefreeError,
    OracleSizeError,
    SingularMatrixError,
)

__all__ = [
    "MAX_ORDER",
    "NevilleRecord",
    "neville_eliminate",
    "neville_bd",
    "exact_solve",
    "matmul",
    "matvec",
    "transpose",
    "determinant",
    "char_poly",
    "IsolatedRoot",
    "sturm_sequence",
    "squarefree_part",
    "isolate_real_roots",
    "exact_eigenvalues",
    "condition_2",
    "check_size",
]

MAX_ORDER = 20

Matrix = list[list]


def check_size(order: int) -> None:
    if order > MAX_ORDER:
        raise OracleSizeError(
            f"exact oracle is limited to order <= {MAX_ORDER}, got {order}"
        )


def _fractions(M: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


# --------------------------------------------------------------------------
# Neville elimination
# --------------------------------------------------------------------------


@dataclass
class NevilleRecord:
    """Pivots p[i][j] and multipliers m[i][j] (0-based, j <= i) of one elimination.

    ``stages`` holds the intermediate matrices A_1, ..., A_N when requested.
    """

    pivots: Matrix
    multipliers: Matrix
    result: Matrix
    stages: list[Matrix] = field(default_factory=list)
    exchange_free: bool = True

    @property
    def diagonal_pivots(self) -> list:
        return [self.pivots[i][i] for i in range(len(self.pivots))]


def neville_eliminate(M: Sequence[Sequence], keep_stages: bool = False) -> NevilleRecord:
    """Neville elimination without row exchanges.

    At step t every row i > t is replaced by row_i - (a_it / a_{i-1,t}) row_{i-1},
    bottom row first, so that each update uses the previous stage.  A zero
    entry above a zero entry gives multiplier 0; a zero entry above a nonzero
    one would need a row exchange and raises :class:`ExchangeRequiredError`.

    Works over any scalar type; the oracle feeds it rationals.
    """
    A = [list(row) for row in M]
    N = len(A)
    zero = A[0][0] * 0 if N else 0
    piv = [[zero] * N for _ in range(N)]
    mult = [[zero] * N for _ in range(N)]
    stages = [[list(r) for r in A]] if keep_stages else []
    for t in range(N):
        for i in range(t, N):
            piv[i][t] = A[i][t]
        for i in range(N - 1, t, -1):
            above = A[i - 1][t]
            if above == 0:
                if A[i][t] != 0:
                    raise ExchangeRequiredError(
                        f"zero pivot at ({i}, {t + 1}) above a nonzero entry"
                    )
                m = zero
            else:
                m = A[i][t] / above
            mult[i][t] = m
            if m != 0:
                A[i] = [A[i][j] - m * A[i - 1][j] if j >= t else A[i][j] for j in range(N)]
            A[i][t] = zero
        if keep_stages:
            stages.append([list(r) for r in A])
    return NevilleRecord(piv, mult, A, stages)


def neville_bd(M: Sequence[Sequence], keep_stages: bool = False):
    """Complete Neville elimination of ``M`` packaged as a BD array.

    Returns ``(record_of_M, record_of_U_transpose, B)`` with
    ``B[i][j] = m_ij`` below the diagonal, the diagonal pivots on it, and
    ``B[i][j] = m~_ji`` (multipliers from eliminating U^T) above it.
    """
    A = _fractions(M) if _all_rational(M) else [list(r) for r in M]
    rec = neville_eliminate(A, keep_stages)
    Ut = transpose(rec.result)
    rec_t = neville_eliminate(Ut, keep_stages)
    N = len(A)
    B = [[None] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if i > j:
                B[i][j] = rec.multipliers[i][j]
            elif i == j:
                B[i][j] = rec.pivots[i][i]
            else:
                B[i][j] = rec_t.multipliers[j][i]
    return rec, rec_t, B


def _all_rational(M) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in M for x in row)


# --------------------------------------------------------------------------
# Linear systems and determinants
# --------------------------------------------------------------------------


def _eliminate(M: Sequence[Sequence], b: Sequence | None = None):
    """Gaussian elimination with first-nonzero pivoting; returns (U, rhs, sign)."""
    A = _fractions(M)
    rhs = [Fraction(x) for x in b] if b is not None else None
    N = len(A)
    sign = 1
    for k in range(N):
        p = next((r for r in range(k, N) if A[r][k] != 0), None)
        if p is None:
            raise SingularMatrixError(f"matrix is singular (column {k + 1})")
        if p != k:
            A[k], A[p] = A[p], A[k]
            if rhs is not None:
                rhs[k], rhs[p] = rhs[p], rhs[k]
            sign = -sign
        for r in range(k + 1, N):
            f = A[r][k] / A[k][k]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[k])]
                if rhs is not None:
                    rhs[r] -= f * rhs[k]
    return A, rhs, sign


def exact_solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of M x = b."""
    if len(b) != len(M):
        raise ValueError(f"right-hand side has length {len(b)}, expected {len(M)}")
    U, y, _ = _eliminate(M, b)
    N = len(U)
    x = [Fraction(0)] * N
    for i in range(N - 1, -1, -1):
        s = y[i] - sum(U[i][j] * x[j] for j in range(i + 1, N))
        x[i] = s / U[i][i]
    return x


def determinant(M: Sequence[Sequence]) -> Fraction:
    try:
        U, _, sign = _eliminate(M)
    except SingularMatrixError:
        return Fraction(0)
    d = Fraction(sign)
    for i in range(len(U)):
        d *= U[i][i]
    return d


# --------------------------------------------------------------------------
# Characteristic polynomial
# --------------------------------------------------------------------------


def _hessenberg(M: Sequence[Sequence]) -> Matrix:
    """Upper Hessenberg form by exact Gaussian similarity transformations."""
    H = _fractions(M)
    N = len(H)
    for k in range(N - 2):
        p = next((r for r in range(k + 1, N) if H[r][k] != 0), None)
        if p is None:
            continue
        if p != k + 1:
            H[k + 1], H[p] = H[p], H[k + 1]
            for row in H:
                row[k + 1], row[p] = row[p], row[k + 1]
        piv = H[k + 1][k]
        for r in range(k + 2, N):
            f = H[r][k] / piv
            if f:
                H[r] = [x - f * y for x, y in zip(H[r], H[k + 1])]
                # similarity: add f * column r to column k+1
                for row in H:
                    row[k + 1] += f * row[r]
    return H


def char_poly(M: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients of det(x I - M), lowest degree first (monic)."""
    H = _hessenberg(M)
    N = len(H)
    # p[k] = characteristic polynomial of the leading k x k block
    p: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, N + 1):
        hkk = H[k - 1][k - 1]
        # (x - h_kk) p_{k-1}
        prev = p[k - 1]
        cur = [Fraction(0)] + prev
        for d, c in enumerate(prev):
            cur[d] -= hkk * c
        prod = Fraction(1)
        for i in range(k - 1, 0, -1):
            prod *= H[i][i - 1]
            if prod == 0:
                break
            coef = prod * H[i - 1][k - 1]
            for d, c in enumerate(p[i - 1]):
                cur[d] -= coef * c
        p.append(cur)
    return p[N]


# --------------------------------------------------------------------------
# Real root isolation
# --------------------------------------------------------------------------


def _integer_poly(coeffs: Sequence) -> list[int]:
    """Primitive integer polynomial with the same roots (lowest degree first)."""
    fr = [Fraction(c) for c in coeffs]
    while fr and fr[-1] == 0:
        fr.pop()
    if not fr:
        raise ValueError("zero polynomial")
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    return _primitive(ints)


def _primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = gcd(g, c)
    return [c // g for c in p] if g > 1 else p


def _derivative(p: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(p)][1:]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """|lc(b)|^k a mod b: a positive multiple of the remainder of a by b."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    alc = abs(lc)
    while len(r) - 1 >= db and any(r):
        shift = len(r) - 1 - db
        lead = r[-1]
        # r <- |lc| r - sign(lc) lead x^shift b
        sg = 1 if lc > 0 else -1
        r = [alc * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= sg * lead * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _prs(p0: list[int]) -> list[list[int]]:
    seq = [p0]
    if len(p0) == 1:
        return seq
    seq.append(_primitive(_derivative(p0)))
    while True:
        r = _pseudo_rem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append(_primitive([-c for c in r]))


def squarefree_part(coeffs: Sequence) -> list[int]:
    """p / gcd(p, p'): same real roots, each simple."""
    p0 = _integer_poly(coeffs)
    g = _prs(p0)[-1]
    if len(g) == 1:
        return p0
    # exact division of p0 by g over the rationals
    rem = [Fraction(c) for c in p0]
    q = [Fraction(0)] * (len(p0) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        q[k] = rem[k + len(g) - 1] / g[-1]
        for i, c in enumerate(g):
            rem[k + i] -= q[k] * c
    return _integer_poly(q)


def sturm_sequence(coeffs: Sequence) -> list[list[int]]:
    """Sturm sequence of a squarefree polynomial, as primitive integer polynomials.

    Raises :class:`NotSquarefreeError` when gcd(p, p') is nonconstant.
    """
    seq = _prs(_integer_poly(coeffs))
    if len(seq[-1]) > 1:
        raise NotSquarefreeError(
            f"polynomial has a repeated factor of degree {len(seq[-1]) - 1}"
        )
    return seq


def _sign_at(p: list[int], x: Fraction) -> int:
    # sign of sum c_k a^k b^(d-k), which equals sign p(a/b) since b > 0
    a, b = x.numerator, x.denominator
    acc = p[-1]
    bpow = 1
    for c in reversed(p[:-1]):
        bpow *= b
        acc = acc * a + c * bpow
    return (acc > 0) - (acc < 0)


def _variations(seq: list[list[int]], x: Fraction) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


@dataclass(frozen=True)
class IsolatedRoot:
    """Rational interval [lo, hi] holding exactly one real root.

    ``lo == hi`` means the root is exactly rational and equal to ``lo``.
    """

    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return float(self.mid)


def _root_bound(p: list[int]) -> Fraction:
    lead = abs(p[-1])
    return 1 + Fraction(max(abs(c) for c in p[:-1]), lead) if len(p) > 1 else Fraction(1)


def isolate_real_roots(
    coeffs: Sequence, tol=Fraction(1, 10**20), relative: bool = False
) -> list[IsolatedRoot]:
    """Isolating intervals for every real root, ascending.

    Each interval is refined by bisection until its width is at most
    ``tol * max(1, |root estimate|)``, or ``tol * |root|`` with ``relative``
    (the interval then also excludes zero).  Requires a squarefree polynomial.
    """
    tol = Fraction(tol)
    seq = sturm_sequence(coeffs)
    p = seq[0]
    if len(p) == 1:
        return []
    B = _root_bound(p)
    # count roots in (lo, hi] by Sturm's theorem
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, _variations(seq, -B), _variations(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _variations(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    found.sort()
    return [_refine(p, lo, hi, tol, relative) for lo, hi in found]


def _refine(
    p: list[int], lo: Fraction, hi: Fraction, tol: Fraction, relative: bool = False
) -> IsolatedRoot:
    """Bisect (lo, hi], which holds one simple root, down to the requested width."""
    s_hi = _sign_at(p, hi)
    if s_hi == 0:
        return IsolatedRoot(hi, hi)
    while True:
        width = hi - lo
        if relative:
            scale = min(abs(lo), abs(hi)) if lo * hi > 0 else Fraction(0)
        else:
            scale = max(Fraction(1), abs(lo), abs(hi))
        if width <= tol * scale and _sign_at(p, lo) != 0:
            return IsolatedRoot(lo, hi)
        mid = (lo + hi) / 2
        s = _sign_at(p, mid)
        if s == 0:
            return IsolatedRoot(mid, mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid


def exact_eigenvalues(M: Sequence[Sequence], tol=Fraction(1, 10**30)) -> list[IsolatedRoot]:
    """Certified real eigenvalues of a rational matrix, descending."""
    check_size(len(M))
    roots = isolate_real_roots(char_poly(M), tol)
    return roots[::-1]


def condition_2(M: Sequence[Sequence], digits: int = 6) -> decimal.Decimal:
    """kappa_2(M) = sqrt(lambda_max / lambda_min) of M^T M, to ``digits`` significant digits."""
    check_size(len(M))
    A = _fractions(M)
    if determinant(A) == 0:
        raise SingularMatrixError("condition number of a singular matrix")
    G = matmul(transpose(A), A)
    # relative interval width well below the requested precision
    tol = Fraction(1, 10 ** (digits + 10))
    # repeated singular values do not affect the extremes
    roots = isolate_real_roots(squarefree_part(char_poly(G)), tol, relative=True)
    small, big = roots[0], roots[-1]
    lo = big.lo / small.hi
    hi = big.hi / small.lo
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        lo_d = decimal.Decimal(lo.numerator) / decimal.Decimal(lo.denominator)
        hi_d = decimal.Decimal(hi.numerator) / decimal.Decimal(hi.denominator)
        mid = ((lo_d.sqrt() + hi_d.sqrt()) / 2)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return +mid
