__all__ = ['WOperator',
           'Basepoint',
           'KernelWitness',
           'AnnihilationReport',
           'apply_Wa',
           'apply_W',
           'odd_part',
           'even_part',
           'find_basepoint',
           'build_kernel_element',
           'rebuild_witness',
           'verify_annihilation']

import logging
from dataclasses import dataclass
from functools import partial
from typing import Optional

import numpy as np

import funklab as fl
from funklab.geometry import (Center, AffinePlane, as_center, make_center, make_infinite_center,
                              random_sphere_points, random_plane_through, random_parallel_plane)
from funklab.functions import SphericalFunction, Composed, Iterated, Sum, CapBump
from funklab.errors import DimensionMismatch, SearchFailed

logger = logging.getLogger(__name__)


def _geodesic(x, y):
    return np.arccos(np.clip(np.sum(x * y, axis=-1), -1.0, 1.0))


def _center_from_dict(d):
    if d['kind'] == 'finite':
        return make_center(d['point'])
    return make_infinite_center(d['direction'])


def apply_Wa(a, f, k) -> SphericalFunction:
    """
    x -> rho_a(x) f(tau_a x); for a center at infinity x -> f(sigma_dir x).
    """
    c = as_center(a)
    w = partial(fl.weight, c, k=k) if c.is_finite else None
    return Composed(f, partial(fl.symmetry, c), weight=w, label='W_a',
                    params={'center': c.to_dict(), 'k': int(k)})


class WOperator( object ):
    """
    The operator W = W_a W_b, (W f)(x) = rho(x) f(T x) with
    rho(x) = rho_b(tau_a x) rho_a(x) and T = tau_b tau_a.
    """

    def __init__(self, a, b, k):
        self.__a = as_center(a)
        self.__b = as_center(b)
        if self.__a.dim != self.__b.dim:
            raise DimensionMismatch('centers of dimension %d and %d' % (self.__a.dim, self.__b.dim))
        self.__k = int(k)

    def a(self):
        return self.__a

    def b(self):
        return self.__b

    def k(self):
        return self.__k

    def params(self):
        return {'a': self.__a.to_dict(), 'b': self.__b.to_dict(), 'k': self.__k}

    def map(self, x):
        return fl.v_map(self.__a, self.__b, x)

    def weight(self, x):
        return fl.weight(self.__b, fl.symmetry(self.__a, x), self.__k) * fl.weight(self.__a, x, self.__k)

    def apply(self, f) -> SphericalFunction:
        return Composed(f, self.map, weight=self.weight, label='W', params=self.params())

    def power(self, f, times) -> SphericalFunction:
        return Iterated(f, self.map, self.weight, times, label='W', params=self.params())

    #
    # Values of W^j f at fixed points for j = 0..N, shape (N+1, m)
    #
    def trajectory(self, f, points, N):
        x = np.asarray(points, dtype=float)
        w = np.ones(x.shape[0])
        values = [f.evaluate(x)]
        for _ in range(int(N)):
            w = w * self.weight(x)
            x = self.map(x)
            values.append(w * f.evaluate(x))
        return np.array(values)


def apply_W(a, b, f, k) -> SphericalFunction:
    return WOperator(a, b, k).apply(f)


def odd_part(a, f, k) -> SphericalFunction:
    return 0.5 * (f - apply_Wa(a, f, k))


def even_part(a, f, k) -> SphericalFunction:
    return 0.5 * (f + apply_Wa(a, f, k))


@dataclass(frozen=True)
class Basepoint:
    e: np.ndarray
    margin: float
    trials: int


def _separation(W, e, q):
    """
    Smallest geodesic gap between the orbit points of each candidate and
    between the candidate and the tau_a image of its orbit.
    """
    orbit = [e]
    for _ in range(q - 1):
        orbit.append(W.map(orbit[-1]))
    margin = np.full(e.shape[0], np.pi)
    for i in range(q):
        for j in range(i + 1, q):
            margin = np.minimum(margin, _geodesic(orbit[i], orbit[j]))
    for x in orbit:
        margin = np.minimum(margin, _geodesic(e, fl.symmetry(W.a(), x)))
    return margin


def find_basepoint(a, b, q, config=None) -> Basepoint:
    """
    Random search for a point e whose orbit points are pairwise separated
    and which stays away from the tau_a image of its orbit.

    Raises
    ------
    SearchFailed
        When no candidate reaches the separation ``basepoint_delta``.
    """
    config = config or fl.get_config()
    W = WOperator(a, b, 1)
    rng = config.rng(2)
    trials = 0
    while trials < config.basepoint_trials:
        m = min(config.basepoint_candidates, config.basepoint_trials - trials)
        e = random_sphere_points(W.a().dim, m, rng)
        margin = _separation(W, e, int(q))
        trials += m
        best = int(np.argmax(margin))
        if margin[best] >= config.basepoint_delta:
            if trials > 1000:
                logger.warning('basepoint search needed %d trials', trials)
            logger.debug('basepoint %s with margin %.4f after %d trials', e[best], margin[best], trials)
            return Basepoint(e[best], float(margin[best]), trials)
    raise SearchFailed('no basepoint with separation %.3g in %d trials' % (config.basepoint_delta, trials))


class KernelWitness( SphericalFunction ):
    """
    Nonzero common kernel element f = g - W_a g, g = sum_{j<q} W^j h, with h a
    cap bump at the basepoint.
    """

    def __init__(self, f, recipe):
        self.__f = f
        self.__recipe = dict(recipe)

    def recipe(self):
        return dict(self.__recipe)

    def basepoint(self):
        return np.array(self.__recipe['e'])

    def evaluate(self, points):
        return self.__f.evaluate(points)

    def describe(self):
        return {'kind': 'kernel_witness', 'recipe': self.recipe()}


def rebuild_witness(recipe) -> KernelWitness:
    a, b = [_center_from_dict(c) for c in recipe['centers']]
    k, q = int(recipe['k']), int(recipe['q'])
    h = CapBump(recipe['e'], recipe['cap_radius'])
    W = WOperator(a, b, k)
    g = Sum([W.power(h, j) for j in range(q)])
    return KernelWitness(g - apply_Wa(a, g, k), recipe)


def build_kernel_element(a, b, q, k, config=None) -> KernelWitness:
    config = config or fl.get_config()
    ca, cb = as_center(a), as_center(b)
    bp = find_basepoint(ca, cb, q, config)
    recipe = {'centers': [ca.to_dict(), cb.to_dict()],
              'q': int(q),
              'k': int(k),
              'e': bp.e.tolist(),
              'cap_radius': min(bp.margin / 2.0, np.pi),
              'margin': bp.margin,
              'seed': config.seed}
    logger.info('kernel element for period %d built at e=%s, cap radius %.4f', q, bp.e, recipe['cap_radius'])
    return rebuild_witness(recipe)


@dataclass(frozen=True)
class AnnihilationReport:
    max_abs: float
    plane_of_max: Optional[AffinePlane]
    planes: int
    order: Optional[int]
    k: int

    def to_dict(self):
        return {'max_abs': self.max_abs,
                'plane_of_max': None if self.plane_of_max is None else self.plane_of_max.to_dict(),
                'planes': self.planes, 'order': self.order, 'k': self.k}


def verify_annihilation(f, center, num_planes=None, order=None, k=None, config=None) -> AnnihilationReport:
    """
    Largest transform value of ``f`` over random planes through the center
    (or parallel to the direction of a center at infinity).
    """
    config = config or fl.get_config()
    center = as_center(center)
    num_planes = config.verify_planes if num_planes is None else int(num_planes)
    k = center.dim - 1 if k is None else int(k)
    rng = config.rng(3)
    max_abs, plane_of_max = 0.0, None
    for _ in range(num_planes):
        if center.is_finite:
            E = random_plane_through(center.vector, k, rng)
        else:
            E = random_parallel_plane(center.vector, k, rng)
        value = abs(fl.apply_transform(center, f, E, order))
        if plane_of_max is None or value > max_abs:
            max_abs, plane_of_max = value, E
    return AnnihilationReport(float(max_abs), plane_of_max, num_planes, order, k)
