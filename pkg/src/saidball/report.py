"""Float-versus-oracle error measurements."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .basis import NodeSet, build_matrix
from .bidiagonal import BDFactorization, decompose, determinant_closed_form
from .eigen import eigenvalues
from .oracle import check_size, exact_eigenvalues, exact_solve, neville_bd
from .scalar import DECOMPOSE_POLICY, SOLVE_POLICY, TraceContext, audit_subtractions
from .tn import apply_inverse, solve


def _diff(a, e) -> Fraction:
    return Fraction(a) - Fraction(e)


def norm2_relative_error(B: Sequence[Sequence], Be: Sequence[Sequence]) -> float:
    """||B - B_e||_2 / ||B_e||_2 with the difference formed exactly."""
    D = np.array([[float(_diff(a, e)) for a, e in zip(r, re)] for r, re in zip(B, Be)])
    E = np.array([[float(e) for e in re] for re in Be])
    return float(np.linalg.norm(D, 2) / np.linalg.norm(E, 2))


def componentwise_relative_error(B: Sequence[Sequence], Be: Sequence[Sequence]) -> float:
    worst = 0.0
    for r, re in zip(B, Be):
        for a, e in zip(r, re):
            e = Fraction(e)
            if e != 0:
                worst = max(worst, abs(float(_diff(a, e) / e)))
            elif a != 0:
                worst = math.inf
    return worst


def scalar_relative_error(x, exact) -> float:
    exact = Fraction(exact)
    return abs(float((Fraction(x) - exact) / exact))


def vector_relative_error(x: Sequence, xe: Sequence) -> float:
    num = sum(_diff(a, e) ** 2 for a, e in zip(x, xe))
    den = sum(Fraction(e) ** 2 for e in xe)
    return math.sqrt(num / den)


def oracle_bd(nodes: NodeSet) -> list[list[Fraction]]:
    return neville_bd(build_matrix(nodes.to_fraction()))[2]


def verify_report(nodes: NodeSet, rhs: Sequence | None = None) -> dict:
    """Full float-path certification against the exact oracle.

    ``nodes`` must be exact rationals; the float path runs on their rounded values.
    """
    check_size(len(nodes))
    exact_nodes = nodes.to_fraction()
    fnodes = exact_nodes.to_float()
    A = build_matrix(exact_nodes)
    bd = decompose(fnodes)
    Be = oracle_bd(exact_nodes)
    det_exact = determinant_closed_form(exact_nodes)
    report: dict = {
        "order": len(nodes),
        "bd_relative_error": norm2_relative_error(bd.entries, Be),
        "bd_componentwise_error": componentwise_relative_error(bd.entries, Be),
        "det_relative_error": scalar_relative_error(bd.determinant(), det_exact),
    }
    if rhs is not None:
        xe = exact_solve(A, rhs)
        rep = solve(bd, [float(v) for v in rhs], exact_solution=xe)
        report["solve_relative_error"] = rep.relative_error
    spectrum = eigenvalues(bd)
    roots = exact_eigenvalues(A)
    report["eigenvalues"] = [
        {"value": v, "exact": float(r.mid), "relative_error": scalar_relative_error(v, r.mid)}
        for v, r in zip(spectrum.values, roots)
    ]
    report["nic_audit"] = nic_audit(fnodes, rhs)
    return report


def nic_audit(nodes: NodeSet, rhs: Sequence | None = None) -> dict:
    """Run decompose (and solve, when ``rhs`` is given) on traced scalars."""
    ctx = TraceContext()
    tn = NodeSet(tuple(ctx.nodes(nodes)))
    bd = decompose(tn)
    out = {"decompose": audit_subtractions(ctx, DECOMPOSE_POLICY).passed}
    if rhs is not None:
        apply_inverse(bd, ctx.data(rhs))
        out["solve"] = audit_subtractions(ctx, SOLVE_POLICY).passed
    return out
