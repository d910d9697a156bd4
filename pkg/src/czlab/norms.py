"""Sup-type and integral norms of fields over disc grids.

Conventions (fixed here, equivalent to the usual partial-derivative
versions up to dimension constants):

    C^0:        sup |u|
    C^1:        sup |u| + sup |dbar u| + sup |dz u|
    L^p:        (integral |u|^p dA)^(1/p)
    W^(k,p):    (sum over jet components up to order k of integral
                 |component|^p dA)^(1/p)

Fields may be given as a FieldSpec (closed forms), as a callable returning a
WirtingerValue on complex arrays, or - for value-only norms - as a callable
returning plain values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldSpec, WirtingerValue, evaluate
from .grids import DiscGrid, QuadratureScheme, integrate_disc, sup_on_grid


class UnsupportedNormError(ValueError):
    """Requested derivative order exceeds what the field can supply."""


@dataclass
class NormReport:
    """A computed norm plus the discretization that produced it.

    argmax is meaningful for sup-type components (the node where the
    largest component attained its sup); accuracy_flag is False whenever an
    underlying quadrature failed to reach its tolerance.
    """

    kind: str
    k: int
    p: float | None
    value: float
    argmax: complex | None
    grid_id: str
    accuracy_flag: bool = True
    est_error: float = 0.0


def _wirtinger_evaluator(field):
    if isinstance(field, FieldSpec):
        return lambda z: evaluate(field, z)
    if callable(field):
        return field
    raise TypeError("field must be a FieldSpec or a callable")


def _components(field, z, k):
    """Jet components of the field at z up to order k, as a list of arrays."""
    ev = _wirtinger_evaluator(field)
    res = ev(z)
    if isinstance(res, WirtingerValue):
        if k == 0:
            return [res.value]
        return [res.value, res.dbar, res.dz]
    if k > 0:
        raise UnsupportedNormError(
            "k = 1 norms need Wirtinger derivatives; got a value-only evaluator")
    return [np.asarray(res)]


def ck_norm(field, k: int, grid: DiscGrid) -> NormReport:
    """C^k norm over the grid (plus the center point), k in {0, 1}."""
    if k not in (0, 1):
        raise UnsupportedNormError("only k = 0 and k = 1 norms are implemented")
    n_comp = 1 if k == 0 else 3

    sups = []
    argmaxes = []
    for i in range(n_comp):
        sup, arg = sup_on_grid(lambda z, i=i: np.abs(_components(field, z, k)[i]), grid)
        sups.append(sup)
        argmaxes.append(arg)
    total = float(np.sum(sups))
    best = argmaxes[int(np.argmax(sups))]
    return NormReport("Ck", k, None, total, best, grid.describe())


def lp_norm(field, p: float, radius: float, scheme: QuadratureScheme) -> NormReport:
    """L^p norm over the disc of the given radius, p > 1."""
    if p <= 1.0:
        raise UnsupportedNormError("p must exceed 1")

    def integrand(z):
        return np.abs(_components(field, z, 0)[0]) ** p

    res = integrate_disc(integrand, radius, scheme)
    return NormReport("Lp", 0, p, float(res.value) ** (1.0 / p), None,
                      f"quad(R={radius:g},{scheme.kind},tol={scheme.target_tol:g})",
                      res.converged, res.est_error)


def wkp_norm(field, k: int, p: float, radius: float,
             scheme: QuadratureScheme) -> NormReport:
    """W^(k,p) norm over the disc, k in {0, 1}, p > 1."""
    if k not in (0, 1):
        raise UnsupportedNormError("only k = 0 and k = 1 norms are implemented")
    if p <= 1.0:
        raise UnsupportedNormError("p must exceed 1")
    n_comp = 1 if k == 0 else 3
    total = 0.0
    est = 0.0
    ok = True
    for i in range(n_comp):
        def integrand(z, i=i):
            return np.abs(_components(field, z, k)[i]) ** p

        res = integrate_disc(integrand, radius, scheme)
        total += float(res.value)
        est += res.est_error
        ok = ok and res.converged
    return NormReport("Wkp", k, p, total ** (1.0 / p), None,
                      f"quad(R={radius:g},{scheme.kind},tol={scheme.target_tol:g})",
                      ok, est)
