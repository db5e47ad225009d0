"""Eigenvalues of an SB-Vandermonde matrix from its bidiagonal decomposition.

The matrix is rebuilt from BD(A) by :func:`~saidball.tn.reconstruct`, which is
subtraction free, and handed to a Wilkinson-shifted QR iteration on its
Hessenberg form.  Large eigenvalues come out to full relative accuracy; the
smallest ones carry the usual absolute error of order u * lambda_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bidiagonal import BDFactorization
from .errors import ConvergenceError
from .tn import reconstruct

__all__ = ["Spectrum", "hessenberg", "qr_eigen", "eigenvalues", "MAX_ITER_PER_EIGENVALUE"]

MAX_ITER_PER_EIGENVALUE = 100
_EPS = np.finfo(float).eps / 2


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    relative_errors: tuple[float, ...] | None = None

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def to_list(self) -> list:
        if self.relative_errors is None:
            return list(self.values)
        return [
            {"value": v, "relative_error": e}
            for v, e in zip(self.values, self.relative_errors)
        ]


def hessenberg(M) -> np.ndarray:
    """Upper Hessenberg matrix orthogonally similar to ``M`` (Householder reflections)."""
    H = np.array(M, dtype=float)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            continue
        v /= vn
        H[k + 1 :, k:] -= 2.0 * np.outer(v, v @ H[k + 1 :, k:])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v)
        H[k + 2 :, k] = 0.0
    return H


def _wilkinson_shift(a: float, b: float, c: float, d: float) -> float:
    """Eigenvalue of [[a, b], [c, d]] closest to d (real part if complex)."""
    tr = 0.5 * (a - d)
    disc = tr * tr + b * c
    if disc < 0:
        return d
    root = math.sqrt(disc)
    # choose the root nearer d without cancellation
    denom = tr + root if tr >= 0 else tr - root
    if denom == 0.0:
        return d
    return d - b * c / denom


def _two_by_two(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    tr = 0.5 * (a + d)
    half = 0.5 * (a - d)
    disc = half * half + b * c
    if disc < 0:
        raise ConvergenceError("trailing 2x2 block has complex eigenvalues")
    root = math.sqrt(disc)
    big = tr + root if tr >= 0 else tr - root
    det = a * d - b * c
    small = det / big if big != 0.0 else tr - root
    return big, small


def qr_eigen(M: Sequence[Sequence]) -> list[float]:
    """Real eigenvalues of a square matrix by shifted QR with deflation.

    Hessenberg reduction, then explicit single-shift QR steps (Givens
    rotations) on the active window with a Wilkinson shift.  A subdiagonal
    entry is set to zero once |h_{k+1,k}| <= u (|h_kk| + |h_{k+1,k+1}|).
    Raises :class:`ConvergenceError` after 100 iterations on one eigenvalue
    or if a deflated 2x2 block has complex eigenvalues.
    """
    H = hessenberg(M)
    n = H.shape[0]
    if n == 0:
        return []
    out: list[float] = []
    hi = n - 1
    iters = 0
    while hi >= 0:
        if hi == 0:
            out.append(H[0, 0])
            break
        # locate the start of the unreduced block ending at hi
        lo = hi
        while lo > 0:
            if abs(H[lo, lo - 1]) <= _EPS * (abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])):
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out.append(H[hi, hi])
            hi -= 1
            iters = 0
            continue
        if lo == hi - 1:
            a, b = H[hi - 1, hi - 1], H[hi - 1, hi]
            c, d = H[hi, hi - 1], H[hi, hi]
            out.extend(_two_by_two(a, b, c, d))
            hi -= 2
            iters = 0
            continue
        iters += 1
        if iters > MAX_ITER_PER_EIGENVALUE:
            raise ConvergenceError(
                f"QR iteration did not converge within {MAX_ITER_PER_EIGENVALUE} "
                f"iterations (active block {lo}..{hi})"
            )
        mu = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        _qr_step(H, lo, hi, mu)
    return out


def _qr_step(H: np.ndarray, lo: int, hi: int, mu: float) -> None:
    """H[lo:hi+1, lo:hi+1] <- R Q + mu I where H - mu I = Q R, in place."""
    m = hi - lo + 1
    W = H[lo : hi + 1, lo : hi + 1]
    W[np.diag_indices(m)] -= mu
    rots = []
    for k in range(m - 1):
        a, b = W[k, k], W[k + 1, k]
        r = math.hypot(a, b)
        c, s = (1.0, 0.0) if r == 0.0 else (a / r, b / r)
        rots.append((c, s))
        rows = W[k : k + 2, k:].copy()
        W[k, k:] = c * rows[0] + s * rows[1]
        W[k + 1, k:] = -s * rows[0] + c * rows[1]
    for k, (c, s) in enumerate(rots):
        cols = W[: k + 2, k : k + 2].copy()
        W[: k + 2, k] = c * cols[:, 0] + s * cols[:, 1]
        W[: k + 2, k + 1] = -s * cols[:, 0] + c * cols[:, 1]
    W[np.diag_indices(m)] += mu
    # the rest of the rows/columns outside the window is untouched; only
    # eigenvalues are wanted, so the off-window coupling blocks are not updated


def eigenvalues(bd: BDFactorization) -> Spectrum:
    """Spectrum of the matrix represented by ``bd``, sorted descending."""
    A = [[float(x) for x in row] for row in reconstruct(bd)]
    vals = sorted(qr_eigen(A), reverse=True)
    for v in vals:
        if not v > 0:
            raise ConvergenceError(f"non-positive eigenvalue {v!r} for a totally positive matrix")
    return Spectrum(tuple(float(v) for v in vals))
