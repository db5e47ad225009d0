"""Said-Ball basis functions and Said-Ball-Vandermonde collocation matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndexRangeError, InvalidNodesError
from .scalar import format_scalar, is_exact, parse_scalar

__all__ = [
    "NodeSet",
    "binomial",
    "power",
    "eval_basis",
    "eval_poly",
    "build_matrix",
    "read_scalar_lines",
]


def binomial(m: int, k: int) -> int:
    """C(m, k) by the multiplicative recurrence C(m, k) = C(m, k-1) (m-k+1) / k."""
    if k < 0 or k > m:
        return 0
    c = 1
    for j in range(1, k + 1):
        c = c * (m - j + 1) // j
    return c


def power(x, e: int):
    """x**e by repeated multiplication (``e >= 0``); the empty power is the integer 1."""
    r = 1
    for _ in range(e):
        r = r * x
    return r


@dataclass(frozen=True)
class NodeSet:
    """Interpolation nodes 0 < t_1 < ... < t_{n+1} < 1 (checked on construction)."""

    nodes: tuple

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise InvalidNodesError("node set is empty")
        for i, t in enumerate(nodes, start=1):
            if not (0 < t < 1):
                raise InvalidNodesError(f"node t{i} = {_fmt(t)} is not inside (0, 1)")
        for i in range(1, len(nodes)):
            if not nodes[i - 1] < nodes[i]:
                raise InvalidNodesError(
                    f"nodes not strictly increasing: t{i} = {_fmt(nodes[i - 1])} "
                    f">= t{i + 1} = {_fmt(nodes[i])}"
                )

    @classmethod
    def parse(cls, lines: Iterable[str], sort: bool = False) -> "NodeSet":
        values = read_scalar_lines(lines)
        if sort:
            values = sorted(values)
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]

    @property
    def degree(self) -> int:
        return len(self.nodes) - 1

    @property
    def parity(self) -> str:
        return "odd" if self.degree % 2 else "even"

    @property
    def exact(self) -> bool:
        return all(is_exact(t) for t in self.nodes)

    def to_float(self) -> "NodeSet":
        return NodeSet(tuple(float(t) for t in self.nodes))

    def to_fraction(self) -> "NodeSet":
        return NodeSet(tuple(Fraction(t) for t in self.nodes))


def _fmt(t) -> str:
    try:
        return format_scalar(t)
    except (TypeError, ValueError):
        return repr(t)


def read_scalar_lines(lines: Iterable[str]) -> list[Fraction]:
    """Parse one scalar per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in lines:
        text = line.split("#", 1)[0].strip()
        if text:
            out.append(parse_scalar(text))
    return out


def eval_basis(n: int, i: int, t):
    """Value of the Said-Ball basis function s_i^n at ``t``.

    Lower half (``i <= (n-1)//2``): C(n//2 + i, i) t^i (1-t)^(n//2 + 1).
    Upper half (``i >= n//2 + 1``): C(n//2 + n - i, n - i) t^(n//2 + 1) (1-t)^(n-i).
    Middle term for even n: C(n, n/2) t^(n/2) (1-t)^(n/2).
    """
    if n < 0 or not 0 <= i <= n:
        raise IndexRangeError(f"basis index {i} out of range for degree {n}")
    h = n // 2
    s = 1 - t
    if i <= (n - 1) // 2:
        return binomial(h + i, i) * power(t, i) * power(s, h + 1)
    if i >= h + 1:
        return binomial(h + n - i, n - i) * power(t, h + 1) * power(s, n - i)
    return binomial(n, h) * power(t, h) * power(s, h)


def eval_poly(coefficients: Sequence, t):
    """Evaluate sum_k a_k s_k^n(t) with n = len(coefficients) - 1."""
    n = len(coefficients) - 1
    total = 0
    for k, a in enumerate(coefficients):
        total = total + a * eval_basis(n, k, t)
    return total


def build_matrix(nodes: NodeSet) -> list[list]:
    """Collocation matrix A[i][j] = s_j^n(t_i), rows indexed by nodes."""
    n = nodes.degree
    return [[eval_basis(n, j, t) for j in range(n + 1)] for t in nodes]
