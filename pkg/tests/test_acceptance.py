"""Acceptance criteria, one pass/fail line each (shown in the terminal summary)."""
import json
import time

import numpy as np
import pytest

from inertia_lab import linalg
from inertia_lab.cli import main
from inertia_lab.search import known_catalog, three_by_n_family
from inertia_lab.search.catalog import N23, N33
from inertia_lab.ptrans import BipartiteDims, Inertia

from conftest import ACCEPTANCE_LINES, rand_herm

pytestmark = pytest.mark.slow

SEPARATION = 1e4


def report_line(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def cli_report(tmp_path, *argv):
    path = tmp_path / "report.json"
    code = main([*argv, "--report", str(path)])
    return code, json.loads(path.read_text())


def search(tmp_path, dims, target, *extra):
    t = f"{target.neg},{target.zero},{target.pos}"
    return cli_report(tmp_path, "search", "--dims", dims, "--target", t, *extra)


def separated(res):
    cert = res["certification"]
    if cert["max_zero_class"] == 0 or cert["min_nonzero_class"] == float("inf"):
        return True
    return cert["min_nonzero_class"] / cert["max_zero_class"] >= SEPARATION


def catalog_run(tmp_path, dims, members, budget):
    t0 = time.perf_counter()
    missing = []
    for target in sorted(members):
        code, rep = search(tmp_path, dims, target)
        res = rep["results"]
        if code != 0 or res["status"] != "found" or not res["certification"]["ok"] or not separated(res):
            missing.append(str(target))
    elapsed = time.perf_counter() - t0
    return missing, elapsed


def test_criterion_1_n23(tmp_path):
    missing, elapsed = catalog_run(tmp_path, "2x3", N23, 60)
    ok = not missing and elapsed < 60
    report_line(1, ok, f"{len(N23) - len(missing)}/4 certified, {elapsed:.1f}s, missing {missing or 'none'}")
    assert ok


def test_criterion_2_n33(tmp_path):
    missing, elapsed = catalog_run(tmp_path, "3x3", N33, 900)
    ok = not missing and elapsed < 900
    report_line(2, ok, f"{len(N33) - len(missing)}/13 certified at 50 restarts, {elapsed:.1f}s, "
                       f"missing {missing or 'none'}")
    assert ok


def exclusion_check(tmp_path, dims, target):
    code, rep = search(tmp_path, dims, target, "--restarts", "200")
    res = rep["results"]
    thr = res["certification_threshold"]
    ok = (
        code == 0
        and res["status"] == "not-found"
        and res["restarts_used"] >= 200
        and res["residual"] >= 100 * thr
        and res["residual_at_margin"] >= 100 * thr
        and any("not a proof" in n for n in res["notes"])
    )
    return ok, f"{target}: residual {res['residual']:.2e} (at margin {res['residual_at_margin']:.2e}), " \
               f"threshold {thr:.1e}"


def test_criterion_3_exclusions_3x3(tmp_path):
    outcomes = [exclusion_check(tmp_path, "3x3", Inertia(4, 1, 4)), exclusion_check(tmp_path, "3x3", Inertia(3, 2, 4))]
    ok = all(o for o, _ in outcomes)
    report_line(3, ok, "; ".join(d for _, d in outcomes) + "; corroboration, not proof")
    assert ok


def test_criterion_4_exclusions_3x4(tmp_path):
    code, rep = cli_report(tmp_path, "census", "--dims", "3x4", "--samples", "100000", "--out",
                           str(tmp_path / "c.csv"))
    seen = {tuple(int(x) for x in row["inertia"].split(",")) for row in rep["results"]["counts"]}
    excluded = {tuple(t) for t in known_catalog(BipartiteDims(3, 4)).known_excluded}
    census_ok = code == 0 and not (seen & excluded) and not rep["results"]["flagged"]
    outcomes = [exclusion_check(tmp_path, "3x4", Inertia(7, 0, 5)), exclusion_check(tmp_path, "3x4", Inertia(6, 2, 4))]
    ok = census_ok and all(o for o, _ in outcomes)
    report_line(4, ok, f"census 1e5 mixed-rank: {len(seen & excluded)} excluded arrays observed; "
                       + "; ".join(d for _, d in outcomes))
    assert ok


def test_criterion_5_lemma_suite(tmp_path):
    t0 = time.perf_counter()
    code, rep = cli_report(tmp_path, "verify", "all", "--trials", "1000")
    elapsed = time.perf_counter() - t0
    lemmas = rep["results"]["lemmas"]
    product = next(r for r in lemmas if r["name"] == "product-tran")
    failed = [r["name"] for r in lemmas if not r["ok"]]
    ok = code == 0 and not failed and product["worst_defect"] <= 1e-12 and elapsed < 300
    report_line(5, ok, f"{len(lemmas) - len(failed)}/{len(lemmas)} suites at 1000 trials, product-tran worst "
                       f"{product['worst_defect']:.1e}, {elapsed:.1f}s")
    assert ok


def test_criterion_6_eigensolver():
    rng = np.random.default_rng(2024)
    worst_recon = worst_orth = 0.0
    for i in range(1000):
        d = 2 + i % 11
        h = rand_herm(rng, d)
        dec = linalg.eig_hermitian(h)
        v, w = dec.eigenvectors, dec.eigenvalues
        fro = np.linalg.norm(h)
        worst_recon = max(worst_recon, np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) / fro)
        worst_orth = max(worst_orth, np.linalg.norm(v.conj().T @ v - np.eye(d)))
    ok = worst_recon <= 1e-10 and worst_orth <= 1e-10
    report_line(6, ok, f"1000 matrices, orders 2-12: reconstruction {worst_recon:.1e}, orthonormality {worst_orth:.1e}")
    assert ok


def test_criterion_7_family():
    details, ok = [], True
    for n in (2, 3, 4, 5):
        fam = known_catalog(BipartiteDims(3, n)).family
        good = len(fam) == (n - 1) * (2 * n - 1) and all(sum(t) == 3 * n for t in fam)
        good = good and list(fam) == three_by_n_family(n)
        ok &= good
        details.append(f"n={n}: {len(fam)}")
    subset = set(known_catalog(BipartiteDims(3, 3)).family) <= N33
    ok &= subset
    report_line(7, ok, ", ".join(details) + f"; n=3 family inside the 13-array catalog: {subset}")
    assert ok


def test_criterion_8_determinism(tmp_path, capsys):
    w = tmp_path / "w.json"
    commands = [
        ["search", "--dims", "3x3", "--target", "2,3,4", "--out", str(w)],
        ["inertia", str(w), "--dims", "3x3"],
        ["catalog", "--dims", "3x4"],
        ["verify", "all", "--trials", "50", "--seed", "9"],
        ["census", "--dims", "3x3", "--samples", "5000", "--seed", "4"],
    ]
    mismatched = []
    for argv in commands:
        payloads = []
        for _ in range(2):
            main([*argv, "--json"])
            rep = json.loads(capsys.readouterr().out)
            rep.pop("started_at")
            rep.pop("duration_s")
            payloads.append(json.dumps(rep, sort_keys=True, indent=2).encode())
        if payloads[0] != payloads[1]:
            mismatched.append(argv[0])
    ok = not mismatched
    report_line(8, ok, f"{len(commands)} commands repeated, mismatched: {mismatched or 'none'}")
    assert ok
