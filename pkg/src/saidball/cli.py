"""Command-line interface: ``sbv decompose|solve|eig|det|interp|verify``.

Exit codes: 0 success, 1 usage or format error, 2 invalid node set,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .basis import NodeSet, build_matrix, read_scalar_lines
from .bidiagonal import BDFactorization, decompose, determinant_closed_form
from .eigen import eigenvalues
from .errors import (
    ConvergenceError,
    ExchangeRequiredError,
    InvalidNodesError,
    NotSquarefreeError,
    OracleSizeError,
    SaidBallError,
    ScalarParseError,
    SingularMatrixError,
)
from .oracle import check_size, exact_eigenvalues, exact_solve
from .report import (
    componentwise_relative_error,
    norm2_relative_error,
    oracle_bd,
    scalar_relative_error,
    verify_report,
)
from .scalar import format_scalar
from .tn import apply_inverse, interpolate, interpolation_residual, solve

EXIT_OK, EXIT_USAGE, EXIT_NODES, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(SaidBallError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    nodes: Path | None
    rhs: Path | None
    values: Path | None
    mode: str
    out: str
    verify: bool
    sort: bool
    bd_in: Path | None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nodes", type=Path, help="node file, one scalar per line")
    common.add_argument("--mode", choices=["float", "exact"], default="float")
    common.add_argument("--out", choices=["text", "json"], default="text", help="output format")
    common.add_argument("--verify", action="store_true", help="compare with the exact oracle")
    common.add_argument("--sort", action="store_true", help="sort the nodes instead of rejecting")
    common.add_argument("--bd-in", type=Path, help="reuse a BD(A) JSON produced by decompose")

    parser = _Parser(prog="sbv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("decompose", parents=[common], help="print BD(A)")
    p = sub.add_parser("solve", parents=[common], help="solve A x = b")
    p.add_argument("--rhs", type=Path, required=True)
    sub.add_parser("eig", parents=[common], help="eigenvalues of A")
    sub.add_parser("det", parents=[common], help="determinant of A")
    p = sub.add_parser("interp", parents=[common], help="Said-Ball interpolation coefficients")
    p.add_argument("--values", type=Path, required=True)
    p = sub.add_parser("verify", parents=[common], help="float path versus exact oracle")
    p.add_argument("--rhs", type=Path)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        nodes=ns.nodes,
        rhs=getattr(ns, "rhs", None),
        values=getattr(ns, "values", None),
        mode=ns.mode,
        out=ns.out,
        verify=ns.verify,
        sort=ns.sort,
        bd_in=ns.bd_in,
    )


# --------------------------------------------------------------------------
# input helpers
# --------------------------------------------------------------------------


def _read_text(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _exact_nodes(cfg: RunConfig) -> NodeSet:
    if cfg.nodes is None:
        raise UsageError("--nodes is required")
    return NodeSet.parse(_read_text(cfg.nodes).splitlines(), sort=cfg.sort)


def _working_nodes(cfg: RunConfig) -> tuple[NodeSet, NodeSet]:
    exact = _exact_nodes(cfg)
    return exact, (exact if cfg.mode == "exact" else exact.to_float())


def _vector(path: Path, mode: str, expected: int) -> list:
    vals = read_scalar_lines(_read_text(path).splitlines())
    if len(vals) != expected:
        raise UsageError(f"{path} has {len(vals)} entries, expected {expected}")
    return vals if mode == "exact" else [float(v) for v in vals]


def _bd(cfg: RunConfig, nodes: NodeSet | None) -> BDFactorization:
    if cfg.bd_in is not None:
        try:
            bd = BDFactorization.from_json(_read_text(cfg.bd_in))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed BD file {cfg.bd_in}: {exc}") from exc
        if nodes is not None and bd.order != len(nodes):
            raise UsageError(f"BD order {bd.order} does not match {len(nodes)} nodes")
        return bd if cfg.mode == "exact" else bd.to_float()
    return decompose(nodes)


def _fmt(x) -> str:
    return format_scalar(x)


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]) -> None:
    if cfg.out == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_decompose(cfg: RunConfig) -> None:
    exact, nodes = _working_nodes(cfg)
    bd = decompose(nodes)
    payload = bd.to_dict()
    lines = [" ".join(_fmt(x) for x in row) for row in bd.entries]
    if cfg.verify:
        check_size(len(exact))
        Be = oracle_bd(exact)
        payload["bd_relative_error"] = norm2_relative_error(bd.entries, Be)
        payload["bd_componentwise_error"] = componentwise_relative_error(bd.entries, Be)
        lines.append(f"# relative error ||B - B_e||_2 / ||B_e||_2 = {payload['bd_relative_error']:.2e}")
        lines.append(f"# componentwise relative error = {payload['bd_componentwise_error']:.2e}")
    _emit(cfg, payload, lines)


def cmd_solve(cfg: RunConfig) -> None:
    exact = nodes = None
    if cfg.nodes is not None or cfg.bd_in is None:
        exact, nodes = _working_nodes(cfg)
    bd = _bd(cfg, nodes)
    b = _vector(cfg.rhs, cfg.mode, bd.order)
    xe = None
    if cfg.verify:
        if exact is None:
            raise UsageError("--verify needs --nodes")
        check_size(len(exact))
        xe = exact_solve(build_matrix(exact), read_scalar_lines(_read_text(cfg.rhs).splitlines()))
    rep = solve(bd, b, exact_solution=xe)
    lines = [_fmt(v) for v in rep.x]
    lines.append(f"# residual norm = {rep.residual_norm:.2e}")
    if rep.relative_error is not None:
        lines.append(f"# relative error vs exact solution = {rep.relative_error:.2e}")
    _emit(cfg, rep.to_dict(), lines)


def cmd_eig(cfg: RunConfig) -> None:
    exact = nodes = None
    if cfg.nodes is not None or cfg.bd_in is None:
        exact, nodes = _working_nodes(cfg)
    if cfg.mode == "exact":
        if exact is None:
            raise UsageError("exact eigenvalues need --nodes")
        roots = exact_eigenvalues(build_matrix(exact))
        values = [float(r.mid) for r in roots]
        _emit(cfg, {"eigenvalues": values}, [repr(v) for v in values])
        return
    spectrum = eigenvalues(_bd(cfg, nodes))
    if cfg.verify:
        if exact is None:
            raise UsageError("--verify needs --nodes")
        roots = exact_eigenvalues(build_matrix(exact))
        errs = [scalar_relative_error(v, r.mid) for v, r in zip(spectrum.values, roots)]
        payload = {"eigenvalues": [{"value": v, "relative_error": e} for v, e in zip(spectrum.values, errs)]}
        lines = [f"{v!r}  # relative error {e:.2e}" for v, e in zip(spectrum.values, errs)]
    else:
        payload = {"eigenvalues": list(spectrum.values)}
        lines = [repr(v) for v in spectrum.values]
    _emit(cfg, payload, lines)


def cmd_det(cfg: RunConfig) -> None:
    exact, nodes = _working_nodes(cfg)
    closed = determinant_closed_form(nodes)
    from_pivots = decompose(nodes).determinant()
    payload = {"determinant": _json_scalar(closed), "pivot_product": _json_scalar(from_pivots)}
    lines = [_fmt(closed), f"# product of pivots = {_fmt(from_pivots)}"]
    if cfg.verify:
        d = determinant_closed_form(exact)
        payload["relative_error"] = scalar_relative_error(closed, d)
        lines.append(f"# relative error vs exact = {payload['relative_error']:.2e}")
    _emit(cfg, payload, lines)


def cmd_interp(cfg: RunConfig) -> None:
    _, nodes = _working_nodes(cfg)
    vals = _vector(cfg.values, cfg.mode, len(nodes))
    coef = interpolate(nodes, vals)
    res = interpolation_residual(nodes, coef, vals)
    payload = {"coefficients": [_json_scalar(c) for c in coef], "max_residual": res}
    lines = [_fmt(c) for c in coef] + [f"# max |p(t_i) - b_i| / ||b||_inf = {res:.2e}"]
    _emit(cfg, payload, lines)


def cmd_verify(cfg: RunConfig) -> None:
    exact = _exact_nodes(cfg)
    rhs = None
    if cfg.rhs is not None:
        rhs = read_scalar_lines(_read_text(cfg.rhs).splitlines())
        if len(rhs) != len(exact):
            raise UsageError(f"{cfg.rhs} has {len(rhs)} entries, expected {len(exact)}")
    rep = verify_report(exact, rhs)
    lines = [
        f"order                      {rep['order']}",
        f"BD relative error (2-norm) {rep['bd_relative_error']:.2e}",
        f"BD componentwise error     {rep['bd_componentwise_error']:.2e}",
        f"determinant relative error {rep['det_relative_error']:.2e}",
    ]
    if "solve_relative_error" in rep:
        lines.append(f"solve relative error       {rep['solve_relative_error']:.2e}")
    lines.append("eigenvalues (value, relative error):")
    lines += [f"  {e['value']:.1e}  {e['relative_error']:.1e}" for e in rep["eigenvalues"]]
    audit = rep["nic_audit"]
    lines.append("NIC audit: " + ", ".join(f"{k} {'pass' if v else 'FAIL'}" for k, v in audit.items()))
    _emit(cfg, rep, lines)


def _json_scalar(x):
    return format_scalar(x) if isinstance(x, (int, Fraction)) else float(x)


COMMANDS = {
    "decompose": cmd_decompose,
    "solve": cmd_solve,
    "eig": cmd_eig,
    "det": cmd_det,
    "interp": cmd_interp,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    cfg = _config(parser.parse_args(argv))
    try:
        COMMANDS[cfg.command](cfg)
    except InvalidNodesError as exc:
        print(f"sbv: invalid nodes: {exc}", file=sys.stderr)
        return EXIT_NODES
    except (UsageError, ScalarParseError, OracleSizeError) as exc:
        print(f"sbv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        ConvergenceError,
        SingularMatrixError,
        ExchangeRequiredError,
        NotSquarefreeError,
        ZeroDivisionError,
    ) as exc:
        print(f"sbv: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
