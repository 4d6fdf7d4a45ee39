__all__ = ['QuadratureRule',
           'sphere_area',
           'sphere_rule',
           'section_rule',
           'funk',
           'slice_transform',
           'apply_transform',
           'jacobian',
           'intertwine_Ma',
           'intertwine_Mbstar',
           'full_sphere_jacobian_integral']

import math
import logging
from dataclasses import dataclass
from functools import partial

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gamma, roots_gegenbauer

import funklab as fl
from funklab.geometry import Center, AffinePlane, as_vec, as_sphere_point, cross_section, inversion_point
from funklab.functions import SphericalFunction, Composed
from funklab.errors import (NotInterior, NotExterior, DegenerateDenominator, CenterNotOnPlane,
                            NotParallel)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.size

    def total(self) -> float:
        return math.fsum(self.weights)

    def integrate(self, f) -> float:
        """
        Compensated weighted sum of ``f`` over the nodes.
        """
        values = f.evaluate(self.nodes) if isinstance(f, SphericalFunction) else f(self.nodes)
        return math.fsum(self.weights * np.asarray(values, dtype=float))


def sphere_area(dim) -> float:
    """
    Surface area of the unit sphere S^dim (2 for S^0, 2 pi for S^1, 4 pi for S^2).
    """
    return float(2.0 * np.pi ** ((dim + 1) / 2.0) / gamma((dim + 1) / 2.0))


def _unit_sphere_rule(m, order):
    # S^{m-1} in R^m: circle trapezoid, then colatitude Gauss rules times the
    # rule of the next lower sphere
    if m == 1:
        return np.array([[1.0], [-1.0]]), np.ones(2)
    if m == 2:
        t = 2.0 * np.pi * np.arange(order) / order
        return np.column_stack([np.cos(t), np.sin(t)]), np.full(order, 2.0 * np.pi / order)
    colat = max(order // 2, 1)
    if m == 3:
        t, w = leggauss(colat)
    else:
        t, w = roots_gegenbauer(colat, (m - 2) / 2.0)
    sub_nodes, sub_w = _unit_sphere_rule(m - 1, order)
    s = np.sqrt(1.0 - t * t)
    nodes = np.concatenate([np.column_stack([np.full(sub_w.size, ti), si * sub_nodes])
                            for ti, si in zip(t, s)])
    weights = np.concatenate([wi * sub_w for wi in w])
    return nodes, weights


def _default_order(k, config):
    return config.circle_order if k <= 2 else config.product_order


def sphere_rule(n, order=None) -> QuadratureRule:
    """
    Product rule on the full unit sphere of R^n.
    """
    order = order or _default_order(n, fl.get_config())
    nodes, weights = _unit_sphere_rule(n, order)
    return QuadratureRule(nodes, weights)


def section_rule(E: AffinePlane, order=None) -> QuadratureRule:
    """
    Quadrature rule for the surface measure of the subsphere E ∩ S^{n-1}.

    Parameters
    ----------
    E : AffinePlane
        Plane meeting the open unit ball.
    order : int, optional
        Nodes per circle (k = 2) or longitudes of the product rule (k >= 3).

    Returns
    -------
    QuadratureRule
        Two unit weights for k = 1; weights summing to the section area otherwise.
    """
    order = order or _default_order(E.k, fl.get_config())
    sec = cross_section(E)
    unit_nodes, unit_weights = _unit_sphere_rule(E.k, order)
    nodes = sec.center + sec.radius * unit_nodes @ E.basis.T
    weights = unit_weights * sec.radius ** (E.k - 1)
    logger.debug('section rule with %d nodes on a %d-section of radius %.6g', weights.size, E.k, sec.radius)
    return QuadratureRule(nodes, weights)


def funk(a, f, E: AffinePlane, order=None) -> float:
    """
    Shifted Funk transform of ``f`` on the plane E through the finite center a.
    """
    if isinstance(a, Center):
        if not a.is_finite:
            raise ValueError('funk needs a finite center; use slice_transform for directions')
        a = a.vector
    a = as_vec(a, E.n)
    dist = float(E.distance(a))
    if dist > fl.get_config().tolerances.plane_membership:
        raise CenterNotOnPlane('plane misses the center by %.3e' % dist)
    return section_rule(E, order).integrate(f)


def slice_transform(direction, f, E: AffinePlane, order=None) -> float:
    """
    Parallel slice transform of ``f`` on the plane E parallel to ``direction``.
    """
    d = as_sphere_point(direction, E.n)
    residual = E.direction_residual(d)
    if residual > fl.get_config().tolerances.plane_membership:
        raise NotParallel('direction leaves the plane by %.3e' % residual)
    return section_rule(E, order).integrate(f)


def apply_transform(center: Center, f, E: AffinePlane, order=None) -> float:
    if center.is_finite:
        return funk(center, f, E, order)
    return slice_transform(center.vector, f, E, order)


def _check_interior(a):
    a = as_vec(a)
    if np.linalg.norm(a) >= 1.0:
        raise NotInterior('|a| = %.6g is not inside the unit ball' % np.linalg.norm(a))
    return a


def jacobian(a, y, k) -> np.ndarray:
    a = _check_interior(a)
    y = np.asarray(y, dtype=float)
    den = np.asarray(1.0 - y @ a)
    if np.any(np.abs(den) < fl.get_config().tolerances.degeneracy):
        raise DegenerateDenominator('<y, a> = 1')
    if int(k) == 1:
        return np.ones_like(den)
    return (np.sqrt(1.0 - a @ a) / den) ** (int(k) - 1)


def intertwine_Ma(a, f, k=2) -> SphericalFunction:
    """
    x -> f(phi_a(x)) J_a(x), carrying F_a to the transform centered at the origin.
    """
    a = _check_interior(a)
    return Composed(f, partial(fl.phi, a), weight=partial(jacobian, a, k=k),
                    label='M_a', params={'a': a.tolist(), 'k': int(k)})


def intertwine_Mbstar(b, f, k=2) -> SphericalFunction:
    """
    x -> f(phi_b*(x)) J_b*(x) with b* = b/|b|^2, carrying F_b to the parallel slice transform.
    """
    b = as_vec(b)
    if np.linalg.norm(b) <= 1.0:
        raise NotExterior('|b| = %.6g is not outside the unit ball' % np.linalg.norm(b))
    bs = inversion_point(b)
    return Composed(f, partial(fl.phi, bs), weight=partial(jacobian, bs, k=k),
                    label='M_b*', params={'b': b.tolist(), 'k': int(k)})


def full_sphere_jacobian_integral(a, order=None) -> float:
    """
    Integral of J_a^(n-1) over the whole sphere; equals the sphere area.
    """
    a = _check_interior(a)
    rule = sphere_rule(a.size, order)
    return rule.integrate(partial(jacobian, a, k=a.size))
