"""Computations driven by the bidiagonal factors stored in BD(A).

With F_i, G_i the Neville elimination factors (unit bidiagonal, entries -m)::

    A^{-1} = G_1 G_2 ... G_n D^{-1} F_n ... F_2 F_1

and, with different unit bidiagonal factors carrying +m in anti-diagonal order::

    A = F'_n ... F'_1 D G'_1 ... G'_n

:func:`solve` applies the first product to a vector in O(n^2) operations,
:func:`reconstruct` forms the second product without a single subtraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basis import NodeSet, eval_poly
from .bidiagonal import BDFactorization, decompose
from .errors import SingularMatrixError
from .scalar import is_exact

__all__ = [
    "SolveReport",
    "solve",
    "apply_inverse",
    "reconstruct",
    "interpolate",
    "interpolation_residual",
    "residual_norm",
]


@dataclass(frozen=True)
class SolveReport:
    x: list
    residual_norm: float
    relative_error: float | None = None

    def to_dict(self) -> dict:
        from .scalar import format_scalar

        if all(is_exact(v) for v in self.x):
            xs = [format_scalar(v) for v in self.x]
        else:
            xs = [float(v) for v in self.x]
        out = {"x": xs, "residual_norm": self.residual_norm}
        if self.relative_error is not None:
            out["relative_error"] = self.relative_error
        return out


def apply_inverse(bd: BDFactorization, b: Sequence) -> list:
    """x = A^{-1} b from the factors of BD(A), right to left."""
    N = bd.order
    if len(b) != N:
        raise ValueError(f"right-hand side has length {len(b)}, expected {N}")
    B = bd.entries
    x = list(b)
    # F_1, ..., F_n: row k minus m_{k,i} times the old row k-1
    for i in range(N - 1):
        for k in range(N - 1, i, -1):
            x[k] = x[k] - B[k][i] * x[k - 1]
    for k in range(N):
        p = B[k][k]
        if p == 0:
            raise SingularMatrixError(f"zero diagonal pivot p_{k + 1},{k + 1}")
        x[k] = x[k] / p
    # G_n, ..., G_1: row k-1 minus m~_{k,i} times the old row k
    for i in range(N - 2, -1, -1):
        for k in range(i + 1, N):
            x[k - 1] = x[k - 1] - B[i][k] * x[k]
    return x


def reconstruct(bd: BDFactorization) -> list[list]:
    """Dense A = F'_n ... F'_1 D G'_1 ... G'_n using only products and sums of positives.

    F'_i carries m_{i+1,1}, m_{i+2,2}, ..., m_{n+1,n+1-i} on its subdiagonal
    (rows i+1..n+1); G'_i is the transpose pattern with the m~ entries.
    """
    B = bd.entries
    N = bd.order
    M = [[B[i][i] if i == j else 0 for j in range(N)] for i in range(N)]
    # right factors G'_1 ... G'_n, innermost first: M <- M G'_i
    for i in range(1, N):
        for k in range(N - 1, i - 1, -1):
            g = B[k - i][k]  # m~_{k+1, k+1-i}
            for row in M:
                row[k] = row[k] + g * row[k - 1]
    # left factors: M <- F'_i M for i = 1 .. n
    for i in range(1, N):
        for k in range(N - 1, i - 1, -1):
            f = B[k][k - i]  # m_{k+1, k+1-i}
            M[k] = [a + f * c for a, c in zip(M[k], M[k - 1])]
    return M


def residual_norm(A: Sequence[Sequence], x: Sequence, b: Sequence) -> float:
    """||A x - b||_2; exact for rationals, compensated summation for floats."""
    if all(is_exact(v) for v in x) and all(is_exact(v) for row in A for v in row):
        sq = Fraction(0)
        for row, bi in zip(A, b):
            r = sum(Fraction(a) * v for a, v in zip(row, x)) - Fraction(bi)
            sq += r * r
        return math.sqrt(sq)
    res = [
        math.fsum([float(a) * float(v) for a, v in zip(row, x)] + [-float(bi)])
        for row, bi in zip(A, b)
    ]
    return math.sqrt(math.fsum(r * r for r in res))


def _relative_error(x: Sequence, xe: Sequence) -> float:
    num = sum((Fraction(a) - Fraction(e)) ** 2 for a, e in zip(x, xe))
    den = sum(Fraction(e) ** 2 for e in xe)
    return math.sqrt(num / den) if den else math.sqrt(num)


def solve(bd: BDFactorization, b: Sequence, exact_solution: Sequence | None = None) -> SolveReport:
    """Solve A x = b by applying the inverse factorization.

    The residual is measured against :func:`reconstruct` (bd).  When
    ``exact_solution`` is given the report carries ||x - x_e|| / ||x_e||.
    """
    x = apply_inverse(bd, b)
    res = residual_norm(reconstruct(bd), x, b)
    err = None if exact_solution is None else _relative_error(x, exact_solution)
    return SolveReport(x, res, err)


def interpolate(nodes: NodeSet, values: Sequence) -> list:
    """Said-Ball coefficients a_0..a_n of the interpolant with p(t_i) = values[i]."""
    if len(values) != len(nodes):
        raise ValueError(f"{len(values)} values for {len(nodes)} nodes")
    return apply_inverse(decompose(nodes), values)


def interpolation_residual(nodes: NodeSet, coefficients: Sequence, values: Sequence) -> float:
    """max_i |p(t_i) - b_i| / ||b||_inf."""
    scale = max(abs(float(v)) for v in values) or 1.0
    return max(abs(float(eval_poly(coefficients, t)) - float(v)) for t, v in zip(nodes, values)) / scale
