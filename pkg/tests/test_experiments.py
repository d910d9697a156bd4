import math

import numpy as np
import pytest

from czlab.experiments import (ConfigurationError, default_counterexample_grid,
                               default_interpolation_grid,
                               default_test_functions, interpolation_bounds,
                               run_counterexample, run_cz_estimator,
                               run_interpolation, run_mollification,
                               run_weak_derivative_check,
                               uniform_dbar_bound_k0, witness_lower_bound)
from czlab.fields import FieldSpec
from czlab.grids import DiscGrid, QuadratureScheme


@pytest.fixture(scope="module")
def ce_report():
    return run_counterexample(0, 8)


def test_counterexample_verdict_and_rows(ce_report):
    r = ce_report
    assert r.verdict
    assert [row["nu"] for row in r.rows] == list(range(1, 9))
    bound = r.extras["uniform_bound"]
    for row in r.rows:
        assert row["c0_dbar_u"] <= bound
        assert row["c1_u"] >= row["lower_bound"] - 1e-9
        assert row["ratio"] == row["c1_u"] / row["c0_dbar_u"]
        assert row["pass"]


def test_counterexample_bound_pieces(ce_report):
    total, rlogr, tail, cutoff_piece = uniform_dbar_bound_k0()
    assert rlogr == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert tail == pytest.approx(1.0 / math.log(4.0), abs=1e-12)
    assert cutoff_piece > 0
    assert total == rlogr + tail + cutoff_piece
    # the spread of the dbar column is below the uniform bound
    col = ce_report.column("c0_dbar_u")
    assert max(col) - min(col) < total


def test_counterexample_ratio_increasing_from_three(ce_report):
    ratios = ce_report.column("ratio")
    tail = [r for nu, r in zip(ce_report.column("nu"), ratios) if nu >= 3]
    assert all(b > a for a, b in zip(tail, tail[1:]))


def test_counterexample_witness_value():
    # half log log 2^(2 nu) at nu = 2, from the dz component at z = 2^-2
    assert witness_lower_bound(2) == pytest.approx(0.50989072026911315, abs=1e-12)


def test_counterexample_k1_runs_and_diverges():
    r = run_counterexample(1, 6)
    assert r.verdict
    for row in r.rows:
        assert row["c2_u"] >= row["lower_bound"] - 1e-9
        assert row["c1_dbar_u"] <= r.extras["uniform_bound"]


def test_counterexample_rejects_bad_grid():
    grid = DiscGrid.build(0.5, 16, 8)  # no witness radii
    with pytest.raises(ConfigurationError):
        run_counterexample(0, 6, grid)


def test_counterexample_rejects_k2():
    with pytest.raises(ConfigurationError):
        run_counterexample(2, 4)


def test_counterexample_empty():
    r = run_counterexample(0, 0)
    assert r.rows == [] and r.verdict and r.extras.get("empty")


def test_counterexample_verdict_stable_under_refinement():
    coarse = run_counterexample(0, 5, default_counterexample_grid(5, 48, 16))
    fine = run_counterexample(0, 5, default_counterexample_grid(5, 96, 32))
    assert coarse.verdict and fine.verdict
    for a, b in zip(coarse.rows, fine.rows):
        assert b["c1_u"] >= a["c1_u"] - 1e-12  # sups grow with refinement


@pytest.fixture(scope="module")
def moll_report():
    return run_mollification([0.08, 0.04, 0.02, 0.01])


def test_mollification_columns_decrease(moll_report):
    for col in ("sup_f_diff", "sup_dbar_f_diff", "sup_dbar_u_diff"):
        vals = moll_report.column(col)
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_mollification_verdict_and_tolerance(moll_report):
    assert moll_report.verdict
    assert moll_report.accuracy_ok
    tol = moll_report.extras["final_tol"]
    last = moll_report.rows[-1]
    for col in ("sup_f_diff", "sup_dbar_f_diff", "sup_dbar_u_diff"):
        assert last[col] < tol


def test_mollification_dbar_column_within_continuity_modulus(moll_report):
    # each sup is below sup_{|z|<=eps}|dbar f| + eps * Lipschitz tail of
    # dbar f outside the eps-disc (modulus-of-continuity bound)
    for row in moll_report.rows:
        eps = row["epsilon"]
        inner = 1.0 / math.log(eps ** -2.0)
        # |grad dbar f| <~ 2/(|z| s(|z|)^2) + 2/(|z| s(|z|)): scan outside eps
        r = np.geomspace(eps, 0.5, 2000)
        s = -2.0 * np.log(r)
        lip = float(np.max(2.0 / (r * s * s) + 2.0 / (r * s)))
        assert row["sup_dbar_f_diff"] <= 2.0 * inner + eps * lip


def test_mollification_rejects_bad_epsilons():
    with pytest.raises(ConfigurationError):
        run_mollification([0.01, 0.02])
    with pytest.raises(ConfigurationError):
        run_mollification([0.2, 0.1])


@pytest.fixture(scope="module")
def interp_report():
    return run_interpolation(6)


def test_interpolation_rows_dominated_by_bounds(interp_report):
    assert interp_report.verdict
    for row in interp_report.rows:
        assert row["sup_dbar_diff"] <= row["bound_sum"]
        assert row["bound_sum"] == row["bound_slope"] + row["bound_tail"]


def test_interpolation_sup_strictly_decreasing(interp_report):
    sups = interp_report.column("sup_dbar_diff")
    assert all(b < a for a, b in zip(sups, sups[1:]))


def test_interpolation_bound_values():
    # tail term at nu = 1 is 1/log 16
    _, tail = interpolation_bounds(1)
    assert tail == pytest.approx(0.36067376022224085, abs=1e-12)
    slope, _ = interpolation_bounds(2)
    assert slope == pytest.approx(math.log(2.0 * math.log(16.0)) / 2.0, abs=1e-12)


def test_interpolation_slope_margins_recorded(interp_report):
    for nu in range(1, 7):
        assert 0.0 < interp_report.extras[f"slope_margin_nu{nu}"] < 1.0


def test_interpolation_rejects_grid_without_splice_radii():
    with pytest.raises(ConfigurationError):
        run_interpolation(4, DiscGrid.build(0.5, 16, 8))


@pytest.fixture(scope="module")
def weak_report():
    return run_weak_derivative_check()


def test_weak_derivative_residuals_small(weak_report):
    assert weak_report.verdict
    assert weak_report.accuracy_ok
    assert len(weak_report.rows) == 16
    assert any(r["center_re"] == 0.0 and r["center_im"] == 0.0
               for r in weak_report.rows)
    for row in weak_report.rows:
        tol = 1e-5 * (1.0 + row["phi_scale"])
        assert row["residual_dbar"] < tol
        assert row["residual_del"] < tol


def test_weak_derivative_residuals_shrink_under_refinement(weak_report):
    for row in weak_report.rows:
        assert row["residual_dbar"] <= row["residual_dbar_prev"] + 1e-12
        assert row["residual_del"] <= row["residual_del_prev"] + 1e-12


def test_weak_derivative_holomorphic_field_at_roundoff():
    def square_jet(z):
        z = np.asarray(z, dtype=complex)
        return z * z, np.zeros_like(z), 2.0 * z

    # roundoff ceiling: integrand magnitudes ~ phi_scale, 1e4 nodes
    r = run_weak_derivative_check(FieldSpec.custom(square_jet), test_fn_count=4)
    assert r.verdict
    for row in r.rows:
        assert row["residual_dbar"] < 1e-10
        assert row["residual_del"] < 1e-10


def test_test_function_supports_stay_inside():
    bumps = default_test_functions(16)
    assert bumps[0][0] == 0j
    for center, eps in bumps:
        assert abs(center) + eps < 0.5


@pytest.fixture(scope="module")
def cz_report():
    return run_cz_estimator(nu_max=6, n_fields=10,
                            scheme=QuadratureScheme(target_tol=1e-7,
                                                    max_refinements=4))


def test_cz_sobolev_column_bounded(cz_report):
    assert cz_report.verdict
    sob = [r["sobolev_ratio"] for r in cz_report.rows if r["nu"]]
    assert max(sob) / min(sob) <= 10.0


def test_cz_floor_ratio_grows(cz_report):
    flr = [r["floor_ratio"] for r in cz_report.rows if r["nu"]]
    assert flr[-1] >= 2.0 * flr[0]


def test_cz_polynomial_rows_present(cz_report):
    labels = [r["label"] for r in cz_report.rows]
    assert sum(1 for l in labels if l.startswith("poly")) == 4
    assert cz_report.extras["sobolev_ratio_max"] >= 1.0


def test_cz_rejects_uncut_field():
    def raw(z):
        z = np.asarray(z, dtype=complex)
        return np.conj(z), np.ones_like(z), np.zeros_like(z)

    family = [("raw_conj", None, FieldSpec.custom(raw))]  # no cutoff
    with pytest.raises(ConfigurationError):
        run_cz_estimator(family=family)


def test_cz_rejects_small_p():
    with pytest.raises(ConfigurationError):
        run_cz_estimator(p=2.0)
