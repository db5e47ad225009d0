"""Scalar arithmetic used by every kernel in the package.

The kernels are written against plain Python arithmetic operators, so any
type implementing ``+ - * /``, unary ``-`` and ordering can be fed through
them.  Three instantiations are used in practice:

* :class:`fractions.Fraction` -- exact rationals (the oracle number type),
* ``float`` -- IEEE double precision,
* :class:`Traced` -- a float wrapper that counts operations and records
  the provenance of both operands of every subtraction, so that the
  no-inaccurate-cancellation property of an algorithm can be audited.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Protocol, Union

from .errors import ScalarParseError

__all__ = [
    "Scalar",
    "ScalarContract",
    "parse_scalar",
    "format_scalar",
    "is_exact",
    "from_ratio",
    "Kind",
    "Tag",
    "Traced",
    "TraceContext",
    "Rule",
    "DECOMPOSE_POLICY",
    "SOLVE_POLICY",
    "AuditReport",
    "audit_subtractions",
]


class ScalarContract(Protocol):
    """Operations a kernel may perform on its scalars."""

    def __add__(self, other): ...
    def __sub__(self, other): ...
    def __mul__(self, other): ...
    def __truediv__(self, other): ...
    def __neg__(self): ...
    def __lt__(self, other) -> bool: ...


Scalar = Union[Fraction, float, "Traced"]

_DECIMAL = re.compile(r"-?\d+(?:\.\d+)?")
_RATIO = re.compile(r"-?\d+/\d+")


def parse_scalar(text: str) -> Fraction:
    """Parse ``[-]digits[.digits]`` or ``[-]digits/digits`` into an exact rational.

    Decimal literals are exact, e.g. ``"0.25"`` gives ``Fraction(1, 4)``.
    """
    s = text.strip()
    if _DECIMAL.fullmatch(s):
        return Fraction(s)
    if _RATIO.fullmatch(s):
        num, den = s.split("/")
        if int(den) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    raise ScalarParseError(f"malformed scalar literal {text!r}")


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar` for rationals; shortest round-trip repr for floats."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return repr(float(x))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def from_ratio(num: int, den: int, like):
    """The rational ``num/den`` in the number type of ``like``."""
    if is_exact(like):
        return Fraction(num, den)
    return num / den


# --------------------------------------------------------------------------
# Instrumented scalar
# --------------------------------------------------------------------------


class Kind(str, enum.Enum):
    NODE = "node"
    ONE = "one"
    CONST = "const"
    DATA = "data"
    DERIVED = "derived"


class Tag(NamedTuple):
    """Provenance of a traced value.

    ``index`` is set for nodes and data entries (1-based, as in t_i and b_i).
    ``from_data`` marks derived values that depend on a data entry.
    """

    kind: Kind
    index: int | None = None
    from_data: bool = False

    def __str__(self) -> str:
        if self.kind is Kind.NODE:
            return f"t{self.index}"
        if self.kind is Kind.DATA:
            return f"b{self.index}"
        if self.kind is Kind.ONE:
            return "1"
        if self.kind is Kind.DERIVED and self.from_data:
            return "derived(data)"
        return self.kind.value


_DERIVED = Tag(Kind.DERIVED)
_DERIVED_DATA = Tag(Kind.DERIVED, from_data=True)


@dataclass
class TraceContext:
    """Collects the operation counts and subtraction operands of one evaluation.

    A context must not be shared between concurrent runs.
    """

    subtractions: list[tuple[Tag, Tag]] = field(default_factory=list)
    ops: Counter = field(default_factory=Counter)

    @property
    def flops(self) -> int:
        return sum(self.ops.values())

    def node(self, value, index: int) -> "Traced":
        return Traced(float(value), Tag(Kind.NODE, index), self)

    def nodes(self, values: Iterable) -> list["Traced"]:
        return [self.node(v, i) for i, v in enumerate(values, start=1)]

    def data(self, values: Iterable) -> list["Traced"]:
        return [Traced(float(v), Tag(Kind.DATA, i), self) for i, v in enumerate(values, start=1)]

    def reset(self) -> None:
        self.subtractions.clear()
        self.ops.clear()


class Traced:
    """A double-precision value that reports every operation to its context.

    Arithmetic is performed on the wrapped float exactly as ``float`` would,
    so results are bit-identical to an untraced run.
    """

    __slots__ = ("value", "tag", "ctx")

    def __init__(self, value: float, tag: Tag, ctx: TraceContext):
        self.value = value
        self.tag = tag
        self.ctx = ctx

    def __repr__(self) -> str:
        return f"Traced({self.value!r}, {self.tag})"

    def _coerce(self, other) -> "Traced":
        if isinstance(other, Traced):
            return other
        if isinstance(other, (int, float, Fraction)):
            kind = Kind.ONE if other == 1 else Kind.CONST
            return Traced(float(other), Tag(kind), self.ctx)
        return NotImplemented

    def _result(self, value: float, a: "Traced", b: "Traced | None" = None) -> "Traced":
        tainted = a.tag.kind is Kind.DATA or a.tag.from_data
        if b is not None:
            tainted = tainted or b.tag.kind is Kind.DATA or b.tag.from_data
        return Traced(value, _DERIVED_DATA if tainted else _DERIVED, self.ctx)

    def _binop(self, other, name: str, reflected: bool):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = (o, self) if reflected else (self, o)
        self.ctx.ops[name] += 1
        if name == "add":
            v = a.value + b.value
        elif name == "sub":
            self.ctx.subtractions.append((a.tag, b.tag))
            v = a.value - b.value
        elif name == "mul":
            v = a.value * b.value
        else:
            if b.value == 0.0:
                raise ZeroDivisionError("traced division by zero")
            v = a.value / b.value
        return self._result(v, a, b)

    def __add__(self, o):
        return self._binop(o, "add", False)

    def __radd__(self, o):
        return self._binop(o, "add", True)

    def __sub__(self, o):
        return self._binop(o, "sub", False)

    def __rsub__(self, o):
        return self._binop(o, "sub", True)

    def __mul__(self, o):
        return self._binop(o, "mul", False)

    def __rmul__(self, o):
        return self._binop(o, "mul", True)

    def __truediv__(self, o):
        return self._binop(o, "div", False)

    def __rtruediv__(self, o):
        return self._binop(o, "div", True)

    def __neg__(self):
        self.ctx.ops["neg"] += 1
        return self._result(-self.value, self)

    def __abs__(self):
        return self._result(abs(self.value), self)

    def __float__(self) -> float:
        return self.value

    def _cmp_value(self, o):
        return o.value if isinstance(o, Traced) else o

    def __lt__(self, o):
        return self.value < self._cmp_value(o)

    def __le__(self, o):
        return self.value <= self._cmp_value(o)

    def __gt__(self, o):
        return self.value > self._cmp_value(o)

    def __ge__(self, o):
        return self.value >= self._cmp_value(o)

    def __eq__(self, o):
        return self.value == self._cmp_value(o)

    def __hash__(self):
        return hash(self.value)


# --------------------------------------------------------------------------
# Subtraction audit
# --------------------------------------------------------------------------


class Rule(enum.Enum):
    """Subtraction operand pairs an audit policy may allow."""

    ONE_MINUS_NODE = "1 - t_k"
    NODE_MINUS_EARLIER_NODE = "t_i - t_j, i > j"
    INVOLVES_DATA = "operand depends on data"

    def matches(self, left: Tag, right: Tag) -> bool:
        if self is Rule.ONE_MINUS_NODE:
            return left.kind is Kind.ONE and right.kind is Kind.NODE
        if self is Rule.NODE_MINUS_EARLIER_NODE:
            return (
                left.kind is Kind.NODE
                and right.kind is Kind.NODE
                and left.index > right.index
            )
        return any(t.kind is Kind.DATA or t.from_data for t in (left, right))


DECOMPOSE_POLICY = frozenset({Rule.ONE_MINUS_NODE, Rule.NODE_MINUS_EARLIER_NODE})
SOLVE_POLICY = DECOMPOSE_POLICY | {Rule.INVOLVES_DATA}


@dataclass(frozen=True)
class AuditReport:
    checked: int
    violations: tuple[tuple[Tag, Tag], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        lines = [f"{status}: {self.checked} subtractions, {len(self.violations)} violations"]
        lines += [f"  {a} - {b}" for a, b in self.violations[:10]]
        return "\n".join(lines)


def audit_subtractions(trace, policy=DECOMPOSE_POLICY) -> AuditReport:
    """Check every recorded subtraction against the allowed operand pairs.

    ``trace`` is a :class:`TraceContext` or a sequence of ``(left, right)`` tags.
    """
    pairs = trace.subtractions if isinstance(trace, TraceContext) else list(trace)
    bad = tuple((a, b) for a, b in pairs if not any(r.matches(a, b) for r in policy))
    return AuditReport(len(pairs), bad)
