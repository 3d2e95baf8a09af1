"""Acceptance gate: eight criteria at their stated tolerances.

Each test prints one ``[acceptance N] PASS|FAIL`` line (visible with
``pytest -s`` or in the captured output of ``-v`` runs) before asserting.
"""

import time

import numpy as np
import pytest

from qschur.pick import (
    CorruptedFunction,
    HarnessConfig,
    PickProblem,
    SeriesFunction,
    dual_certify,
    hindmarsh_certify,
    pick_matrix,
    pick_problem,
    representation_extend,
    vvector_extend,
)
from qschur.qlinalg import QMatrix, embed, is_psd, min_eigenvalue, psd_check
from qschur.quaternion import Quaternion, sample_ball, sample_offslice, sphere_representative
from qschur.report import Verdict
from qschur.series import (
    QPowerSeries,
    block_criterion,
    certify_schur,
    eval_left,
    eval_right,
    random_schur_series,
    sharp,
    slice_decompose,
    toeplitz_defect_embedding,
)

from conftest import rand_ball, rand_q
from oracles import pick_matrix_series

pytestmark = pytest.mark.acceptance


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_1_stein_solver_matches_series_oracle(capsys):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        pts = [rand_ball(rng, 0.9) for _ in range(n)]
        vals = [rand_q(rng, 0.6) for _ in range(n)]
        solved = pick_matrix(PickProblem(tuple(pts), tuple(vals))).data
        ref = pick_matrix_series([p.as_array() for p in pts], [v.as_array() for v in vals], tail=1e-12)
        worst = max(worst, float(np.abs(solved - ref).max()))
    elapsed = time.perf_counter() - start
    report(capsys, 1, worst <= 1e-10 and elapsed < 5.0, f"max entry difference {worst:.3g} (<= 1e-10), {elapsed:.2f}s (< 5s)")


def test_2_schur_series_give_psd_pick_matrices(capsys):
    rng = np.random.default_rng(202)
    start = time.perf_counter()
    series = []
    while len(series) < 20:
        g = random_schur_series(rng, int(rng.integers(0, 9)), order=64, shrink=0.9)
        if certify_schur(g, 64).verdict is Verdict.PASS:
            series.append(g)
    worst = np.inf
    for t in range(500):
        f = SeriesFunction(series[t % 20])
        m = pick_matrix(pick_problem(f, [sample_ball(rng, 0.05) for _ in range(3)]))
        worst = min(worst, min_eigenvalue(0.5 * (m + m.adjoint())))
    elapsed = time.perf_counter() - start
    ok = worst >= -1e-9 and elapsed < 30.0
    report(capsys, 2, ok, f"min embedding eigenvalue {worst:.3g} over 500 matrices (>= -1e-9), {elapsed:.2f}s (< 30s)")


def test_3_hindmarsh_round_trip(capsys, schur_fixtures):
    start = time.perf_counter()
    verdicts, worst = [], 0.0
    for g in schur_fixtures:
        assert g.degree <= 8
        rep = hindmarsh_certify(SeriesFunction(g), HarnessConfig(radius=0.5, dft_points=256))
        verdicts.append(rep.verdict)
        for k in range(len(rep.reconstructed)):
            worst = max(worst, abs(rep.reconstructed.coefficient(k) - g.coefficient(k)))
    elapsed = time.perf_counter() - start
    passed = sum(v is Verdict.PASS for v in verdicts)
    ok = passed == len(schur_fixtures) and worst <= 1e-6 and elapsed < 60.0
    report(
        capsys, 3, ok, f"{passed}/{len(schur_fixtures)} pass, coefficient error {worst:.3g} (<= 1e-6), {elapsed:.2f}s (< 60s)"
    )


def test_4_falsification(capsys, schur_fixtures):
    cfg = HarnessConfig(seed=0, structured_samples=200)
    two = hindmarsh_certify(lambda a: Quaternion(2.0), cfg)
    a_ok = two.verdict is Verdict.FAIL and two.witness["kind"] == "one_point" and len(two.witness["points"]) == 1

    base = SeriesFunction(schur_fixtures[0].scaled(0.5))
    bad = hindmarsh_certify(CorruptedFunction(base, offslice_offset=Quaternion(0.2)), cfg)
    w = bad.witness or {}
    b_ok = bad.verdict is Verdict.FAIL and w.get("kind") == "structured_triple" and w.get("trial", 200) < 200
    again = hindmarsh_certify(CorruptedFunction(base, offslice_offset=Quaternion(0.2)), cfg)
    deterministic = again.to_dict() == bad.to_dict()

    cert = certify_schur(QPowerSeries.of(1.1), 64)
    c_ok = cert.verdict is Verdict.FAIL and cert.witness["order"] == 1
    ok = a_ok and b_ok and c_ok and deterministic
    report(
        capsys,
        4,
        ok,
        f"(a) f=2 one-point witness {a_ok}; (b) structured witness at trial {w.get('trial')} {b_ok}; "
        f"(c) 1.1 fails at n=1 {c_ok}; deterministic {deterministic}",
    )


def test_5_extension_identities(capsys, schur_fixtures):
    rng = np.random.default_rng(505)
    worst = 0.0
    for t in range(1000):
        g = schur_fixtures[t % len(schur_fixtures)]
        gam = sample_offslice(rng, 0.05, 0.05)
        a = sphere_representative(gam)
        aq = Quaternion.from_complex(a)
        fa, fab = eval_left(g, aq), eval_left(g, aq.conj())
        truth = eval_left(g, gam)
        rep = representation_extend(aq, aq.conj(), fa, fab, gam)
        vv = vvector_extend(a, fa, fab, gam)
        scale = max(abs(truth), 1e-300)
        worst = max(worst, abs(rep - truth) / scale, abs(vv - truth) / scale, abs(rep - vv) / scale)
    report(capsys, 5, worst <= 1e-10, f"max relative residual {worst:.3g} on 1000 points (<= 1e-10)")


def test_6_block_criterion_equals_embedding(capsys):
    rng = np.random.default_rng(606)
    worst, mismatches, checks, psd_count = 0.0, 0, 0, 0
    for _ in range(50):
        degree = int(rng.integers(0, 9))
        raw = QPowerSeries(tuple(rand_q(rng) for _ in range(degree + 1)))
        # spread the norms around 1 so both verdicts occur
        g = raw.scaled(float(rng.uniform(0.3, 1.5)) / max(1.0, sum(abs(c) for c in raw.coefficients)))
        s, h = slice_decompose(g)
        for n in (1, 2, 4, 8, 16, 32):
            blk = block_criterion(s, h, n)
            emb = toeplitz_defect_embedding(g, n)
            worst = max(worst, float(np.abs(blk - emb).max()))
            v1, v2 = psd_check(blk)[0], psd_check(emb)[0]
            mismatches += v1 != v2
            psd_count += v1
            checks += 1
    ok = worst <= 1e-12 and mismatches == 0
    report(
        capsys, 6, ok, f"max entry difference {worst:.3g} (<= 1e-12), {mismatches} verdict mismatches in {checks} ({psd_count} PSD)"
    )


def test_7_duality(capsys, schur_fixtures):
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(1000):
        g = QPowerSeries(tuple(rand_q(rng) for _ in range(int(rng.integers(1, 10)))))
        a = sample_ball(rng, 0.05)
        lhs = eval_right(g, a)
        rhs = eval_left(sharp(g), a.conj()).conj()
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    verdicts = [dual_certify(SeriesFunction(g, "right")).verdict for g in schur_fixtures[:3]]
    ok = worst <= 1e-12 and all(v is Verdict.PASS for v in verdicts)
    report(capsys, 7, ok, f"max relative duality residual {worst:.3g} (<= 1e-12); dual_certify {[v.value for v in verdicts]}")


def test_8_embedding_homomorphism_and_psd(capsys):
    rng = np.random.default_rng(808)
    worst = 0.0
    for _ in range(100):
        a, b = QMatrix(rng.normal(size=(3, 3, 4))), QMatrix(rng.normal(size=(3, 3, 4)))
        worst = max(worst, float(np.abs(embed(a @ b) - embed(a) @ embed(b)).max()))
    psd = sum(is_psd(m @ m.adjoint()) for m in (QMatrix(rng.normal(size=(3, 3, 4))) for _ in range(100)))
    ok = worst <= 1e-12 and psd == 100
    report(capsys, 8, ok, f"max homomorphism defect {worst:.3g} (<= 1e-12); is_psd(M M*) on {psd}/100")
