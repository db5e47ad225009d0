"""Acceptance gate: one test per criterion, each printing a PASS/FAIL summary line."""

import random
import time
from fractions import Fraction

import pytest

from conftest import (
    ACCEPTANCE,
    EXAMPLE_RHS,
    example_nodes,
    random_float_nodes,
    random_rational_nodes,
)
from saidball.basis import NodeSet, build_matrix, eval_basis
from saidball.bidiagonal import decompose, determinant_closed_form
from saidball.eigen import eigenvalues, qr_eigen
from saidball.oracle import (
    condition_2,
    exact_eigenvalues,
    exact_solve,
    isolate_real_roots,
    neville_bd,
)
from saidball.report import (
    componentwise_relative_error,
    nic_audit,
    norm2_relative_error,
    scalar_relative_error,
    vector_relative_error,
)
from saidball.scalar import TraceContext
from saidball.tn import apply_inverse, interpolate, reconstruct

F = Fraction

# eigenvalue magnitudes of the 16-node example to two significant digits
TABLE_EIGENVALUES = [
    "1.0e+00", "9.4e-01", "7.0e-01", "5.2e-01", "3.1e-01", "1.4e-01", "6.0e-02", "3.0e-02",
    "8.6e-03", "2.6e-03", "6.1e-04", "6.2e-05", "8.3e-06", "9.1e-07", "5.5e-08", "5.0e-09",
]


def record(name: str, checks: dict[str, bool], detail: str) -> None:
    failed = [k for k, ok in checks.items() if not ok]
    ok = not failed
    ACCEPTANCE.append((name, ok, detail + ("" if ok else f"; failed: {', '.join(failed)}")))
    assert ok, f"{name}: {detail}; failed: {failed}"


@pytest.fixture(scope="module")
def example():
    nodes = example_nodes()
    return nodes, nodes.to_float(), build_matrix(nodes)


def test_1_example_solve(example):
    nodes, fn, _ = example
    b = [float(v) for v in EXAMPLE_RHS]
    t0 = time.perf_counter()
    x = apply_inverse(decompose(fn), b)
    t_float = time.perf_counter() - t0
    t0 = time.perf_counter()
    xe = exact_solve(build_matrix(nodes), EXAMPLE_RHS)
    t_oracle = time.perf_counter() - t0
    err = vector_relative_error(x, xe)
    record(
        "1 example solve",
        {"error <= 5e-15": err <= 5e-15, "float <= 1 s": t_float <= 1.0, "oracle <= 60 s": t_oracle <= 60.0},
        f"relative error {err:.2e}, float {t_float * 1e3:.1f} ms, oracle {t_oracle:.2f} s",
    )


def test_2_bd_accuracy(example):
    nodes, fn, A = example
    err2 = norm2_relative_error(decompose(fn).entries, neville_bd(A)[2])
    rng = random.Random(2)
    worst = 0.0
    parities = set()
    for k in range(100):
        n = 1 + k % 10
        r = random_float_nodes(rng, n)
        parities.add(r.parity)
        Be = neville_bd(build_matrix(r.to_fraction()))[2]
        worst = max(worst, componentwise_relative_error(decompose(r).entries, Be))
    record(
        "2 BD accuracy",
        {"2-norm <= 5e-14": err2 <= 5e-14, "componentwise <= 1e-13": worst <= 1e-13, "both parities": len(parities) == 2},
        f"example 2-norm error {err2:.2e}, worst componentwise over 100 sets {worst:.2e}",
    )


@pytest.mark.slow
def test_3_condition_number(example):
    _, _, A = example
    t0 = time.perf_counter()
    kappa = condition_2(A, digits=2)
    elapsed = time.perf_counter() - t0
    text = f"{float(kappa):.1e}"
    record(
        "3 condition number",
        {"kappa = 3.2e+08": text == "3.2e+08", "runtime <= 120 s": elapsed <= 120.0},
        f"kappa_2 = {text} in {elapsed:.1f} s",
    )


@pytest.mark.slow
def test_4_eigenvalues(example):
    _, fn, A = example
    roots = exact_eigenvalues(A)
    mags = [f"{float(r.mid):.1e}" for r in roots]
    vals = eigenvalues(decompose(fn)).values
    lam1 = float(roots[0].mid)
    big_err = small_err = 0.0
    for v, r in zip(vals, roots):
        e = scalar_relative_error(v, r.mid)
        if float(r.mid) >= 1e-4 * lam1:
            big_err = max(big_err, e)
        else:
            small_err = max(small_err, e)
    record(
        "4 eigenvalues",
        {
            "16 positive roots": len(roots) == 16 and all(r.lo > 0 for r in roots),
            "magnitudes match table": mags == TABLE_EIGENVALUES,
            "large <= 1e-12": big_err <= 1e-12,
            "small <= 1e-7": small_err <= 1e-7,
        },
        f"table magnitudes {'match' if mags == TABLE_EIGENVALUES else 'differ'}, "
        f"QR error {big_err:.1e} (>= 1e-4 lambda_1), {small_err:.1e} (smaller)",
    )


def test_5_exactness_suite():
    rng = random.Random(5)
    counts = dict.fromkeys(["bd", "roundtrip", "det", "unity"], 0)
    for k in range(120):
        nodes = random_rational_nodes(rng, k % 9, den=rng.choice([97, 1000, 7919]))
        A = build_matrix(nodes)
        bd = decompose(nodes)
        counts["bd"] += bd.rows() == neville_bd(A)[2]
        counts["roundtrip"] += reconstruct(bd) == A
        counts["det"] += bd.determinant() == determinant_closed_form(nodes)
        t = F(rng.randint(1, 10**6 - 1), 10**6)
        n = nodes.degree
        counts["unity"] += sum(eval_basis(n, i, t) for i in range(n + 1)) == 1
    record(
        "5 exactness suite",
        {name: c == 120 for name, c in counts.items()},
        ", ".join(f"{name} {c}/120" for name, c in counts.items()),
    )


def test_6_nic_audit():
    rng = random.Random(6)
    bad = []
    for k in range(100):
        nodes = random_float_nodes(rng, 1 + k % 20)
        rhs = [rng.uniform(-10, 10) for _ in nodes]
        audit = nic_audit(nodes, rhs)
        if not all(audit.values()):
            bad.append(k)
    record("6 NIC audit", {"zero violations": not bad}, f"{100 - len(bad)}/100 runs clean (decompose and solve)")


def _flops(n: int) -> tuple[int, int]:
    ctx = TraceContext()
    nodes = NodeSet(tuple(ctx.nodes([(k + 0.5) / (n + 1) for k in range(n + 1)])))
    bd = decompose(nodes)
    dec = ctx.flops
    ctx.reset()
    apply_inverse(bd, ctx.data([1.0] * (n + 1)))
    return dec, ctx.flops


def test_7_complexity():
    sizes = [8, 16, 32, 64]
    counts = {n: _flops(n) for n in sizes}
    dec_ratios = [counts[2 * n][0] / counts[n][0] for n in sizes[:-1]]
    sol_ratios = [counts[2 * n][1] / counts[n][1] for n in sizes[:-1]]
    within = lambda rs: all(3.0 <= r <= 5.0 for r in rs)  # noqa: E731
    record(
        "7 complexity",
        {"decompose ~ n^2": within(dec_ratios), "solve ~ n^2": within(sol_ratios)},
        "doubling ratios decompose " + " ".join(f"{r:.2f}" for r in dec_ratios)
        + ", solve " + " ".join(f"{r:.2f}" for r in sol_ratios),
    )


def test_8_trivial_closed_forms():
    two = NodeSet((F(1, 4), F(1, 2)))
    t = F(3, 7)
    bd = decompose(two)
    spectrum = sorted(eigenvalues(bd).values, reverse=True)
    roots = [float(r) for r in isolate_real_roots([F(1, 4), F(-5, 4), 1])]
    checks = {
        "2x2 BD": bd.rows() == [[F(3, 4), F(1, 3)], [F(2, 3), F(1, 3)]],
        "det = t2 - t1": determinant_closed_form(two) == two[1] - two[0] == bd.determinant(),
        # trace 5/4 and determinant 1/4 force the second eigenvalue to be 1/4
        "spectrum {1, 1/4}": spectrum == pytest.approx([1.0, 0.25], rel=1e-15)
        and roots == [0.25, 1.0],
        "diag spectrum": sorted(qr_eigen([[3.0, 0, 0], [0, 2.0, 0], [0, 0, 1.0]])) == [1.0, 2.0, 3.0],
        "all-ones solve": apply_inverse(bd, [F(1), F(1)]) == [1, 1],
        "constant interpolant": interpolate(two, [F(1), F(1)]) == [1, 1],
        "partition of unity": all(sum(eval_basis(n, i, t) for i in range(n + 1)) == 1 for n in range(12)),
        "degree-1 basis": eval_basis(1, 0, t) == 1 - t,
    }
    record(
        "8 trivial closed forms",
        checks,
        f"{sum(checks.values())}/{len(checks)} hold; 2x2 spectrum is {{1, 1/4}} (not 1/8)",
    )
