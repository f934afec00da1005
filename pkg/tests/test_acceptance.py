"""Acceptance criteria, one test each. The terminal summary lists one
pass/fail line per criterion."""
import random
import time

import pytest

from veronese_res.cli import main
from veronese_res.complexes import BettiTable, GradedFreeModule
from veronese_res.lift import lift_even, lift_odd
from veronese_res.poly import QQ, Polynomial, Ring, random_homogeneous
from veronese_res.resolution import build_even, build_odd
from veronese_res.serialize import random_curve
from veronese_res.veronese import theta, veronese_complex
from veronese_res.verify import (
    check_complex,
    check_homogeneity,
    check_minimal,
    graded_exactness,
    hilbert_from_resolution,
    hilbert_oracle,
    syzygy_span_agreement,
    theta_vanishing_check,
)

from conftest import GF, curve

pytestmark = pytest.mark.acceptance

RESULTS = {}


def record(k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def betti(twists):
    return BettiTable.from_modules([GradedFreeModule(t) for t in twists])


def even_twists(m):
    return [[0], [2] * 6 + [m], [3] * 8 + [m + 2] * 6, [4] * 3 + [m + 3] * 8, [m + 4] * 3]


def odd_twists(m):
    return [[0], [2] * 6 + [m] * 3, [3] * 8 + [m + 1] * 8, [4] * 3 + [m + 2] * 6, [m + 4]]


def family_problems(c, d, twists):
    m = c.provenance["m"]
    problems = []
    lift = c.provenance["lift"]
    f = c.curve
    if d % 2 == 0:
        if theta(lift.F) != f:
            problems.append("theta(F) != f")
    else:
        xs = [Polynomial.var(v, f.field) for v in Ring.CURVE.variables]
        if any(theta(lift.F[n]) != xs[n] * f for n in range(3)):
            problems.append("theta(F_n) != x_n f")
    for name, res in (("complex", check_complex(c)), ("minimal", check_minimal(c)),
                      ("homogeneity", check_homogeneity(c)), ("theta", theta_vanishing_check(c))):
        if not res.passed:
            problems.append(name)
    if c.betti_table() != betti(twists(m)):
        problems.append("betti")
    if any(hilbert_from_resolution(c, n) != hilbert_oracle(d, n) for n in range(m + 7)):
        problems.append("hilbert")
    if not graded_exactness(c, m + 6, GF).exact:
        problems.append("exactness")
    return problems


def test_criterion_1_veronese():
    t0 = time.perf_counter()
    c = veronese_complex()
    ok_betti = c.betti_table() == {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3}
    ok_comp = check_complex(c).passed
    ok_min = check_minimal(c).passed
    ok_exact = graded_exactness(c, 8, GF).exact
    elapsed = time.perf_counter() - t0
    ok = ok_betti and ok_comp and ok_min and ok_exact and elapsed < 5
    assert record(1, ok, f"betti={ok_betti} d.d=0={ok_comp} minimal={ok_min} "
                         f"exact(n<=8)={ok_exact} time={elapsed:.2f}s (<5s)")


def test_criterion_2_even_family():
    t0 = time.perf_counter()
    failures = []
    for d in (2, 4, 6):
        for seed in range(5):
            c = build_even(random_curve(d, seed))
            failures += [(d, seed, p) for p in family_problems(c, d, even_twists)]
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    assert record(2, ok, f"15 curves d in (2,4,6) failures={failures} time={elapsed:.1f}s (<60s)")


def test_criterion_3_odd_family():
    t0 = time.perf_counter()
    failures = []
    for d in (3, 5, 7):
        for seed in range(5):
            c = build_odd(random_curve(d, seed))
            failures += [(d, seed, p) for p in family_problems(c, d, odd_twists)]
            if d == 3 and c.betti_table() != {(0, 0): 1, (1, 2): 9, (2, 3): 16, (3, 4): 9, (4, 6): 1}:
                failures.append((d, seed, "merged betti"))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 90
    assert record(3, ok, f"15 curves d in (3,5,7) failures={failures} time={elapsed:.1f}s (<90s)")


def test_criterion_4_oracle():
    failures = []
    cells = 0
    for d in range(2, 8):
        c = (build_even if d % 2 == 0 else build_odd)(random_curve(d, 100 + d))
        for n in range(c.provenance["m"] + 4):
            cmp = syzygy_span_agreement(c, n, GF)
            cells += 1
            if not cmp.equal:
                failures.append((d, n, cmp.image_rank, cmp.oracle_dim, cmp.stacked_rank))
    assert record(4, not failures, f"{cells} (d, n) cells, span mismatches={failures}")


def test_criterion_5_lift_round_trip():
    rng = random.Random(2024)
    bad = []
    total = 0
    xs = [Polynomial.var(v, QQ) for v in Ring.CURVE.variables]
    for d in range(2, 9):
        done = 0
        while done < 200:
            f = random_homogeneous(Ring.CURVE, d, rng, QQ, density=rng.choice((0.2, 0.5, 1.0)))
            if f.is_zero():
                continue
            done += 1
            if d % 2 == 0:
                if theta(lift_even(f).F) != f:
                    bad.append((d, str(f)))
            else:
                F = lift_odd(f).F
                if any(theta(F[n]) != xs[n] * f for n in range(3)):
                    bad.append((d, str(f)))
        total += done
    assert record(5, not bad, f"{total} polynomials over d=2..8, mismatches={len(bad)}")


def test_criterion_6_mutation():
    rng = random.Random(6)
    missed = []
    tried = 0
    for text in ("x0^3 + x1^3 + x2^3", "x0^4 + x1^4 + x2^4"):
        f = curve(text, GF)
        c = (build_odd if f.homogeneous_degree() % 2 else build_even)(f)
        m = c.provenance["m"]
        for i in range(1, c.length + 1):
            nz = c.d(i).nonzero_positions()
            for r, col in rng.sample(nz, min(10, len(nz))):
                tried += 1
                d = c.d(i)
                mutant = c.replace_differential(i, d.with_entry(r, col, -d.entries[r][col]))
                if check_complex(mutant).passed and graded_exactness(mutant, m + 4, GF).exact:
                    missed.append((text, i, r, col))
    assert record(6, not missed, f"{tried} sign flips, undetected={missed}")


def test_criterion_7_cli(tmp_path, capsys):
    codes = {}
    for name, text in (("cubic", "x0^3 + x1^3 + x2^3"), ("quartic", "x0^4 + x1^4 + x2^4")):
        src = tmp_path / f"{name}.txt"
        src.write_text(text + "\n")
        out = tmp_path / f"{name}.json"
        codes[f"resolve {name}"] = main(["resolve", "--input", str(src), "--out", str(out)])
        codes[f"verify {name}"] = main(["verify", "--input", str(out)])
    bad = tmp_path / "bad.txt"
    bad.write_text("x0^2 + + x1**")
    codes["malformed"] = main(["resolve", "--input", str(bad)])
    lin = tmp_path / "lin.txt"
    lin.write_text("x0 + 2*x1 - x2")
    codes["d=1"] = main(["resolve", "--input", str(lin)])
    capsys.readouterr()
    want = {"resolve cubic": 0, "verify cubic": 0, "resolve quartic": 0, "verify quartic": 0,
            "malformed": 2, "d=1": 3}
    assert record(7, codes == want, f"exit codes {codes}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
