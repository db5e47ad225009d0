"""Bidiagonal decomposition BD(A) of a Said-Ball-Vandermonde matrix.

BD(A) is stored as one (n+1) x (n+1) array ``B`` (0-based here):

* ``B[i][j]``, i > j: multiplier m_{i+1,j+1} of the Neville elimination of A,
* ``B[i][i]``: diagonal pivot p_{i+1,i+1},
* ``B[i][j]``, i < j: multiplier m~_{j+1,i+1} of the Neville elimination of A^T.

:func:`decompose` computes it from the nodes alone in O(n^2) operations whose
only subtractions are ``t_i - t_j`` (i > j) and ``1 - t_k``.  The closed forms
:func:`multiplier`, :func:`transpose_multiplier` and :func:`pivot` use the
mathematical 1-based indexing and serve as an independent cross-check.

Degree notation used throughout: ``n`` is the degree, ``h = n // 2``,
``L = (n - 1) // 2 + 1`` is the number of basis functions in the lower half
(``(n+1)/2`` for odd n, ``n/2`` for even n) and ``r = h + 1`` is the power of
``(1 - t)`` carried by those functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basis import NodeSet, binomial, power
from .errors import IndexRangeError
from .scalar import format_scalar, from_ratio, is_exact, parse_scalar

__all__ = [
    "BDFactorization",
    "decompose",
    "multiplier",
    "transpose_multiplier",
    "pivot",
    "determinant_closed_form",
    "closed_form_bd",
]


@dataclass(frozen=True)
class BDFactorization:
    entries: tuple[tuple, ...]
    parity: str

    @property
    def order(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return self.order - 1

    @property
    def pivots(self) -> list:
        return [self.entries[i][i] for i in range(self.order)]

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for row in self.entries for x in row)

    def determinant(self):
        d = 1
        for p in self.pivots:
            d = d * p
        return d

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def to_float(self) -> "BDFactorization":
        return BDFactorization(
            tuple(tuple(float(x) for x in r) for r in self.entries), self.parity
        )

    def to_dict(self) -> dict:
        if self.exact:
            rows = [[format_scalar(x) for x in r] for r in self.entries]
        else:
            rows = [[float(x) for x in r] for r in self.entries]
        return {"order": self.order, "parity": self.parity, "rows": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "BDFactorization":
        rows = data["rows"]
        order = int(data.get("order", len(rows)))
        if len(rows) != order or any(len(r) != order for r in rows):
            raise ValueError(f"BD rows do not form a {order} x {order} array")
        conv = [[parse_scalar(x) if isinstance(x, str) else x for x in r] for r in rows]
        parity = data.get("parity") or ("odd" if (order - 1) % 2 else "even")
        return cls(tuple(tuple(r) for r in conv), parity)

    @classmethod
    def from_json(cls, text: str) -> "BDFactorization":
        return cls.from_dict(json.loads(text))


def _dims(n: int) -> tuple[int, int, int]:
    h = n // 2
    return h, (n - 1) // 2 + 1, h + 1


# --------------------------------------------------------------------------
# Fast algorithm
# --------------------------------------------------------------------------


def decompose(nodes: NodeSet) -> BDFactorization:
    """BD(A) of the SB-Vandermonde matrix of ``nodes`` in O(n^2) operations.

    The number type of the nodes is preserved (rationals stay exact).
    """
    t = [None] + list(nodes)  # 1-based
    n = nodes.degree
    N = n + 1
    h, L, r = _dims(n)
    B = [[None] * N for _ in range(N)]
    if n == 0:
        B[0][0] = from_ratio(1, 1, t[1])
        return BDFactorization(tuple(map(tuple, B)), nodes.parity)

    s = [None] + [1 - t[k] for k in range(1, N + 1)]
    sr = [None] + [power(s[k], r) for k in range(1, N + 1)]
    # d[i][k] = t_i - t_k for i > k
    d = [[None] * (N + 1) for _ in range(N + 1)]
    for i in range(2, N + 1):
        for k in range(1, i):
            d[i][k] = t[i] - t[k]

    # multipliers m_ij of A
    m = [[None] * (N + 1) for _ in range(N + 1)]
    for i in range(2, N + 1):
        m[i][1] = sr[i] / sr[i - 1]
        for j in range(1, min(i - 2, L - 1) + 1):
            m[i][j + 1] = d[i][i - j] / d[i - 1][i - j - 1] * m[i][j]
    for i in range(L + 2, N + 1):
        m[i][L + 1] = (s[i - L - 1] * d[i][i - L]) / (s[i] * d[i - 1][i - L - 1]) * m[i][L]
        for j in range(L + 1, i - 1):
            num = s[i - 1] * s[i - j - 1] * d[i][i - j]
            den = s[i] * s[i - j] * d[i - 1][i - j - 1]
            m[i][j + 1] = num / den * m[i][j]

    # multipliers m~_ij of A^T
    mt = [[None] * (N + 1) for _ in range(N + 1)]
    for i in range(2, L + 1):
        aux = from_ratio(h + i - 1, i - 1, t[1])
        for j in range(1, i):
            mt[i][j] = aux * t[j]
    # row L+1 crosses from the lower to the upper half of the basis
    c = 1 if n % 2 else 2
    prod = 1
    for j in range(1, L + 1):
        prod = prod * s[j]
        mt[L + 1][j] = c * t[j] / prod
    inv_s = [None] + [1 / s[k] for k in range(1, N + 1)]
    odds = [None] + [t[k] / s[k] for k in range(1, N + 1)]
    for i in range(L + 2, N + 1):
        aux = from_ratio(n - i + 2, h + n - i + 2, t[1])
        for j in range(1, i - r):
            mt[i][j] = aux * inv_s[j]
        for j in range(max(i - r, 1), i):
            mt[i][j] = aux * odds[j]

    # diagonal pivots
    p = [None] * (N + 1)
    for i in range(1, L + 1):
        diffs = 1
        for k in range(1, i):
            diffs = diffs * d[i][k]
        p[i] = binomial(h + i - 1, i - 1) * sr[i] * diffs
    prod = 1
    for k in range(1, L + 1):
        prod = prod * s[k]
    for i in range(L + 1, N + 1):
        diffs = 1
        for k in range(1, i):
            diffs = diffs * d[i][k]
        coef = binomial(h + n - i + 1, n - i + 1)
        p[i] = coef * power(s[i], n - i + 1) * diffs / prod
        prod = prod * s[i]

    for i in range(1, N + 1):
        B[i - 1][i - 1] = p[i]
        for j in range(1, i):
            B[i - 1][j - 1] = m[i][j]
            B[j - 1][i - 1] = mt[i][j]
    return BDFactorization(tuple(map(tuple, B)), nodes.parity)


# --------------------------------------------------------------------------
# Closed forms (1-based indices)
# --------------------------------------------------------------------------


def _check_pair(nodes: NodeSet, i: int, j: int) -> None:
    N = len(nodes)
    if not 1 <= j < i <= N:
        raise IndexRangeError(f"need 1 <= j < i <= {N}, got i={i}, j={j}")


def multiplier(nodes: NodeSet, i: int, j: int):
    """Closed-form multiplier m_ij of the Neville elimination of A (1 <= j < i <= n+1)."""
    _check_pair(nodes, i, j)
    t = [None] + list(nodes)
    n = nodes.degree
    _, L, r = _dims(n)
    num = 1
    for k in range(1, j):
        num = num * (t[i] - t[i - k])
    den = 1
    for k in range(2, j + 1):
        den = den * (t[i - 1] - t[i - k])
    if j <= L:
        return power(1 - t[i], r) * num / (power(1 - t[i - 1], r) * den)
    return (
        power(1 - t[i], n - j + 1) * (1 - t[i - j]) * num
        / (power(1 - t[i - 1], n - j + 2) * den)
    )


def transpose_multiplier(nodes: NodeSet, i: int, j: int):
    """Closed-form multiplier m~_ij of the Neville elimination of A^T (1 <= j < i <= n+1)."""
    _check_pair(nodes, i, j)
    t = [None] + list(nodes)
    n = nodes.degree
    h, L, r = _dims(n)
    if i <= L:
        return Fraction(h + i - 1, i - 1) * t[j]
    if i == L + 1:
        den = 1
        for k in range(1, j + 1):
            den = den * (1 - t[k])
        return (1 if n % 2 else 2) * t[j] / den
    aux = Fraction(n - i + 2, h + n - i + 2)
    if j <= i - r - 1:
        return aux / (1 - t[j])
    return aux * t[j] / (1 - t[j])


def pivot(nodes: NodeSet, i: int):
    """Closed-form diagonal pivot p_ii (1 <= i <= n+1)."""
    N = len(nodes)
    if not 1 <= i <= N:
        raise IndexRangeError(f"pivot index {i} out of range 1..{N}")
    t = [None] + list(nodes)
    n = nodes.degree
    h, L, r = _dims(n)
    diffs = 1
    for k in range(1, i):
        diffs = diffs * (t[i] - t[k])
    if i <= L:
        return binomial(h + i - 1, i - 1) * power(1 - t[i], r) * diffs
    den = 1
    for k in range(1, i):
        den = den * (1 - t[k])
    return binomial(h + n - i + 1, n - i + 1) * power(1 - t[i], n - i + 1) * diffs / den


def determinant_closed_form(nodes: NodeSet):
    """det A = (product of binomials)^2 [x C(n, n/2) for even n] x prod_{i<j} (t_j - t_i)."""
    t = list(nodes)
    n = nodes.degree
    h, L, _ = _dims(n)
    pre = 1
    for k in range(L):
        pre *= binomial(h + k, k)
    pre *= pre
    if n % 2 == 0:
        pre *= binomial(n, h)
    vand = 1
    for j in range(len(t)):
        for i in range(j):
            vand = vand * (t[j] - t[i])
    return pre * vand


def closed_form_bd(nodes: NodeSet) -> BDFactorization:
    """BD array assembled entry by entry from the closed forms (O(n^3))."""
    N = len(nodes)
    B = [[None] * N for _ in range(N)]
    for i in range(1, N + 1):
        B[i - 1][i - 1] = pivot(nodes, i)
        for j in range(1, i):
            B[i - 1][j - 1] = multiplier(nodes, i, j)
            B[j - 1][i - 1] = transpose_multiplier(nodes, i, j)
    return BDFactorization(tuple(map(tuple, B)), nodes.parity)
