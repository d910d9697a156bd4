import math

import numpy as np
import pytest

from czlab.fields import FieldSpec, evaluate, ParameterError
from czlab.grids import (DiscGrid, QuadratureScheme, fd_wirtinger,
                         integrate_disc, integrate_radial, pairwise_sum,
                         sup_on_grid)


def test_pairwise_sum_matches_fsum():
    rng = np.random.default_rng(0)
    for n in (1, 2, 3, 7, 8, 100, 1001):
        vals = rng.normal(size=n) * 10.0 ** rng.integers(-8, 8, size=n)
        assert pairwise_sum(vals) == pytest.approx(math.fsum(vals), rel=1e-12)
    assert pairwise_sum([]) == 0.0


def test_pairwise_sum_deterministic():
    rng = np.random.default_rng(1)
    vals = rng.normal(size=12345)
    assert pairwise_sum(vals) == pairwise_sum(vals.copy())


def test_grid_invariants():
    g = DiscGrid.build(0.5, 64, 32, mandatory_radii=(0.25, 0.125))
    assert np.all(np.diff(g.radii) > 0)
    assert g.radii[0] == g.r_min
    assert g.r_min <= 1e-8 * g.radius
    assert g.radii[-1] <= g.radius * (1 - 1.0 / g.n_radial)
    assert 0.25 in g.radii and 0.125 in g.radii
    assert 0.0 not in g.radii
    assert g.nodes().shape == (len(g.radii), 32)


def test_grid_rejects_bad_r_min():
    with pytest.raises(ParameterError):
        DiscGrid.build(0.5, 32, 32, r_min=1e-4)


def test_disc_area():
    res = integrate_disc(lambda z: np.ones(z.shape), 0.5, QuadratureScheme())
    assert res.converged
    assert res.value == pytest.approx(math.pi / 4.0, abs=1e-12)


@pytest.mark.parametrize("p,expected", [(1, 1.0), (2, 2.0), (3, 6.0)])
def test_gamma_identity_radial(p, expected):
    # int_0^1 (log 1/r)^p dr = Gamma(p+1) under the r = e^-t substitution
    res = integrate_radial(lambda r: np.log(1.0 / r) ** p, 0.0, 1.0,
                           QuadratureScheme())
    assert res.converged
    assert res.value == pytest.approx(expected, abs=1e-10)


def test_radially_symmetric_disc_integral_matches_radial_oracle():
    # integral over the disc of g(|z|) equals 2 pi int g(r) r dr
    def g(r):
        return np.log(np.log(r ** -2.0))

    disc = integrate_disc(lambda z: g(np.abs(z)), 0.5, QuadratureScheme())
    radial = integrate_radial(g, 0.0, 0.5, QuadratureScheme(), weight="r_dr")
    assert disc.converged and radial.converged
    assert disc.value == pytest.approx(2.0 * math.pi * radial.value, rel=1e-9)


def test_integrable_singularity_stable_under_refinement():
    # |dz f| has a log-log blowup at 0 but integrates stably (the absolute
    # value also has a kink where dz f changes sign, so tolerances here are
    # those of a C^0 integrand, not a smooth one)
    spec = FieldSpec.sikorav()

    def fn(z):
        return np.abs(evaluate(spec, z).dz)

    coarse = integrate_disc(fn, 0.5, QuadratureScheme(target_tol=1e-4))
    fine = integrate_disc(fn, 0.5, QuadratureScheme(target_tol=1e-6))
    assert coarse.converged and fine.converged
    assert fine.value == pytest.approx(coarse.value, rel=1e-4)


def test_refinement_never_increases_est_error():
    def fn(z):
        return np.exp(-np.abs(z) ** 2) * (1.0 + np.real(z))

    loose = integrate_disc(fn, 0.5, QuadratureScheme(target_tol=1e-4))
    tight = integrate_disc(fn, 0.5, QuadratureScheme(target_tol=1e-12))
    assert tight.est_error <= loose.est_error
    assert abs(tight.value - loose.value) <= loose.est_error + 1e-15


def test_nonconvergence_is_flagged():
    rng = np.random.default_rng(2)

    def noisy(z):
        return rng.normal(size=z.shape)  # never converges

    res = integrate_disc(noisy, 0.5, QuadratureScheme(max_refinements=2))
    assert not res.converged
    assert res.est_error > 0.0


def test_trapezoid_kind_agrees():
    res_a = integrate_disc(lambda z: np.abs(z) ** 2, 0.5,
                           QuadratureScheme(kind="polar_adaptive"))
    res_t = integrate_disc(lambda z: np.abs(z) ** 2, 0.5,
                           QuadratureScheme(kind="polar_trapezoid", target_tol=1e-8))
    exact = 2.0 * math.pi * 0.5 ** 4 / 4.0
    assert res_a.value == pytest.approx(exact, abs=1e-10)
    assert res_t.value == pytest.approx(exact, abs=1e-6)


def test_fd_wirtinger_holomorphic_and_antiholomorphic():
    for z in (0.1 + 0.2j, -0.05 + 0.01j):
        db, dz = fd_wirtinger(lambda w: w, z, 1e-4)
        assert abs(db) < 1e-8 and abs(dz - 1.0) < 1e-8
        db, dz = fd_wirtinger(lambda w: np.conj(w), z, 1e-4)
        assert abs(db - 1.0) < 1e-8 and abs(dz) < 1e-8


def test_fd_wirtinger_exact_on_low_degree_polynomials():
    # dbar of a holomorphic polynomial is zero up to roundoff
    for z in (0.2 + 0.1j, 0.3 - 0.25j):
        db, _ = fd_wirtinger(lambda w: 1.0 + 2.0 * w + 0.5 * w * w, z, 1e-3)
        assert abs(db) < 1e-12


def test_fd_wirtinger_richardson_against_closed_form():
    spec = FieldSpec.sikorav()
    z = 0.25 + 0.1j
    wv = evaluate(spec, z)
    errs = []
    for h in (1e-3, 5e-4):
        db, dz = fd_wirtinger(lambda w: evaluate(spec, w).value, z, h)
        errs.append(max(abs(db - wv.dbar), abs(dz - wv.dz)))
    assert errs[1] <= 0.3 * errs[0]


def test_sup_on_grid_constant_field():
    g = DiscGrid.build(0.5, 16, 8)
    sup, _ = sup_on_grid(lambda z: np.full(np.shape(z), -3.0), g)
    assert sup == 3.0


def test_sup_on_grid_dbar_field_monotone_argmax():
    # |dbar f| increases with |z|, so the argmax sits on the outermost ring
    spec = FieldSpec.sikorav()
    g = DiscGrid.build(0.5, 48, 16)
    sup, arg = sup_on_grid(lambda z: np.abs(evaluate(spec, z).dbar), g)
    assert abs(arg) == g.radii[-1]
    assert sup < 1.0 / math.log(4.0)
    assert sup == pytest.approx(1.0 / math.log(g.radii[-1] ** -2.0), rel=1e-12)


def test_sup_on_grid_witness_value():
    # grid containing 2^-nu sees at least half log log 2^(2 nu) in |dz|
    nu = 3
    g = DiscGrid.build(0.5, 48, 16, mandatory_radii=(2.0 ** -nu,))
    spec = FieldSpec.power_log(nu)
    sup, _ = sup_on_grid(lambda z: np.abs(evaluate(spec, z).dz), g)
    assert sup >= 0.5 * math.log(math.log(2.0 ** (2 * nu)))


def test_sup_monotone_under_refinement():
    spec = FieldSpec.sikorav()
    g = DiscGrid.build(0.5, 24, 8)
    fine = g.refine(2)
    s_coarse, _ = sup_on_grid(lambda z: np.abs(evaluate(spec, z).value), g)
    s_fine, _ = sup_on_grid(lambda z: np.abs(evaluate(spec, z).value), fine)
    assert s_fine >= s_coarse
