"""Acceptance battery: each criterion runs at its stated tolerance and
must pass within its stated runtime bound."""

import time

from posetlab import corpus


def run(fn, bound=None):
    t0 = time.time()
    ok, detail = fn()
    elapsed = time.time() - t0
    line = f"{'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}"
    print(line)
    assert ok, detail
    if bound is not None:
        assert elapsed < bound, f"runtime {elapsed:.2f}s exceeds {bound}s"
    return detail


def test_criterion_1_polygon_formula():
    run(corpus.criterion_1_polygon_formula, bound=1.0)


def test_criterion_2_main_inequality():
    run(corpus.criterion_2_main_inequality, bound=60.0)


def test_criterion_3_decomposition():
    run(corpus.criterion_3_decomposition, bound=120.0)


def test_criterion_4_stanley():
    run(corpus.criterion_4_stanley)


def test_criterion_5_flag_formulas():
    run(corpus.criterion_5_flag_formulas)


def test_criterion_6_homology_certification():
    run(corpus.criterion_6_homology)


def test_criterion_7_sheaf_cross_validation():
    run(lambda: corpus.criterion_7_sheaf_cross_validation(seed=0, sweeps=100),
        bound=300.0)


def test_criterion_8_algebra_properties():
    run(lambda: corpus.criterion_8_algebra_properties(seed=0))
