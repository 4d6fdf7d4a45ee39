__all__ = ['as_vec',
           'as_sphere_point',
           'random_sphere_points',
           'Center',
           'make_center',
           'make_infinite_center',
           'as_center',
           'AffinePlane',
           'CrossSection',
           'make_plane',
           'plane_through',
           'plane_from_points',
           'cross_section',
           'random_plane_through',
           'random_parallel_plane',
           'phi',
           'psi',
           'inversion_point',
           'image_subsphere',
           'plane_image_under_phi',
           'automorphism_identities']

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

import funklab as fl
from funklab.errors import (OnSphere, NotInterior, DegenerateDenominator, ZeroVector,
                            DimensionMismatch, RankDeficient, Disjoint, CenterNotOnPlane)

logger = logging.getLogger(__name__)


def as_vec(v, n=None) -> np.ndarray:
    """
    Converts a sequence of coordinates into a float vector of R^n.

    Parameters
    ----------
    v : array_like
        Coordinates.
    n : int, optional
        Expected dimension.

    Returns
    -------
    np.ndarray
        One dimensional float array.
    """
    v = np.array(v, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise DimensionMismatch('expected a vector of dimension >= 2, got shape %s' % (v.shape,))
    if n is not None and v.size != n:
        raise DimensionMismatch('expected dimension %d, got %d' % (n, v.size))
    if not np.all(np.isfinite(v)):
        raise ValueError('vector entries must be finite')
    return v


def as_sphere_point(v, n=None) -> np.ndarray:
    v = as_vec(v, n)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ZeroVector('the zero vector has no direction on the sphere')
    return v / norm


def _check_points(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise DimensionMismatch('points of dimension %d do not match dimension %d' % (x.shape[-1], n))
    return x


def random_sphere_points(n, m, rng) -> np.ndarray:
    x = rng.standard_normal((m, n))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


#
# Centers
#

@dataclass(frozen=True, eq=False)
class Center:
    """
    A finite center a (|a| != 1) or a center at infinity given by a unit direction.
    """
    kind: str
    vector: np.ndarray

    @property
    def is_finite(self) -> bool:
        return self.kind == 'finite'

    @property
    def is_interior(self) -> bool:
        return self.is_finite and np.linalg.norm(self.vector) < 1.0

    @property
    def dim(self) -> int:
        return self.vector.size

    def to_dict(self):
        key = 'point' if self.is_finite else 'direction'
        return {'kind': self.kind, key: self.vector.tolist()}

    def __repr__(self):
        return 'Center(%s, %s)' % (self.kind, np.array2string(self.vector, precision=6))


def make_center(v, tol=None) -> Center:
    tol = fl.get_config().tolerances.verdict if tol is None else tol
    v = as_vec(v)
    if abs(np.linalg.norm(v) - 1.0) <= tol:
        raise OnSphere('center %s lies on the unit sphere' % v.tolist())
    v.setflags(write=False)
    return Center('finite', v)


def make_infinite_center(direction) -> Center:
    d = as_sphere_point(direction)
    d.setflags(write=False)
    return Center('infinite', d)


def as_center(obj) -> Center:
    if isinstance(obj, Center):
        return obj
    return make_center(obj)


#
# Affine planes
#

@dataclass(frozen=True, eq=False)
class AffinePlane:
    """
    Affine k-plane of R^n in canonical form: orthonormal basis columns and
    the foot of the perpendicular from the origin as offset.
    """
    basis: np.ndarray
    offset: np.ndarray

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def project(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.offset + (x - self.offset) @ self.projector()

    def distance(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.linalg.norm(x - self.project(x), axis=-1)

    def direction_residual(self, v) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.linalg.norm(v - self.projector() @ v))

    def meets_ball(self) -> bool:
        return np.linalg.norm(self.offset) < 1.0

    def same_as(self, other, tol=1e-10) -> bool:
        if self.basis.shape != other.basis.shape:
            return False
        return (np.max(np.abs(self.projector() - other.projector())) <= tol and
                np.linalg.norm(self.offset - other.offset) <= tol)

    def to_dict(self):
        return {'basis': self.basis.T.tolist(), 'offset': self.offset.tolist()}


@dataclass(frozen=True)
class CrossSection:
    center: np.ndarray
    radius: float


def make_plane(basis, offset) -> AffinePlane:
    """
    Builds the canonical plane spanned by the columns of ``basis`` through ``offset``.
    """
    basis = np.array(basis, dtype=float)
    if basis.ndim == 1:
        basis = basis[:, None]
    offset = as_vec(offset, basis.shape[0])
    n, k = basis.shape
    if k < 1 or k > n:
        raise DimensionMismatch('a plane of R^%d needs between 1 and %d directions' % (n, n))
    s = np.linalg.svd(basis, compute_uv=False)
    if s[-1] <= 1e-10 * max(s[0], 1.0):
        raise RankDeficient('plane directions are linearly dependent')
    q, _ = np.linalg.qr(basis)
    offset = offset - q @ (q.T @ offset)
    q.setflags(write=False)
    offset.setflags(write=False)
    return AffinePlane(q, offset)


def plane_through(point, directions) -> AffinePlane:
    directions = [as_vec(d) for d in directions]
    return make_plane(np.column_stack(directions), point)


def plane_from_points(points) -> AffinePlane:
    pts = np.array(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise RankDeficient('at least two points are required')
    diffs = pts[1:] - pts[0]
    s = np.linalg.svd(diffs, compute_uv=False)
    if s[-1] <= 1e-10 * max(s[0], 1.0):
        raise RankDeficient('points are not affinely independent')
    return make_plane(diffs.T, pts[0])


def cross_section(E: AffinePlane, tol=None) -> CrossSection:
    tol = fl.get_config().tolerances.sphere if tol is None else tol
    d = np.linalg.norm(E.offset)
    if d >= 1.0 - tol:
        raise Disjoint('plane at distance %.6g from the origin misses the open unit ball' % d)
    return CrossSection(E.offset.copy(), float(np.sqrt(1.0 - d * d)))


def _random_ball_point(n, rng, rmax=0.95):
    u = random_sphere_points(n, 1, rng)[0]
    return u * rmax * rng.random() ** (1.0 / n)


def random_plane_through(center, k, rng) -> AffinePlane:
    """
    Random k-plane through ``center`` that meets the open unit ball.
    """
    a = np.asarray(center, dtype=float)
    n = a.size
    while True:
        p = _random_ball_point(n, rng)
        dirs = [p - a] + [rng.standard_normal(n) for _ in range(k - 1)]
        try:
            return plane_through(a, dirs)
        except RankDeficient:
            continue


def random_parallel_plane(direction, k, rng) -> AffinePlane:
    d = as_sphere_point(direction)
    n = d.size
    while True:
        p = _random_ball_point(n, rng)
        dirs = [d] + [rng.standard_normal(n) for _ in range(k - 1)]
        try:
            return plane_through(p, dirs)
        except RankDeficient:
            continue


#
# Ball automorphisms
#

def _interior(a, tol=0.0):
    a = as_vec(a)
    if np.linalg.norm(a) >= 1.0 - tol:
        raise NotInterior('automorphism parameter must lie in the open unit ball, |a| = %.6g'
                          % np.linalg.norm(a))
    return a


def phi(a, x) -> np.ndarray:
    """
    Involutive automorphism of the unit ball exchanging 0 and a.

    Vectorized over the leading axes of ``x``.

    Parameters
    ----------
    a : array_like
        Parameter with |a| < 1.
    x : array_like
        Points of shape (n,) or (m, n).

    Returns
    -------
    np.ndarray
        Images with the shape of ``x``.
    """
    a = _interior(a)
    x = _check_points(x, a.size)
    aa = a @ a
    if aa == 0.0:
        return -x
    xa = np.asarray(x @ a)
    den = 1.0 - xa
    if np.any(np.abs(den) < fl.get_config().tolerances.degeneracy):
        raise DegenerateDenominator('<x, a> = 1 makes the automorphism singular')
    px = (xa / aa)[..., None] * a
    qx = x - px
    return (a - px - np.sqrt(1.0 - aa) * qx) / den[..., None]


def psi(a, x) -> np.ndarray:
    """
    Moebius involution of the ball built from inversions; on the sphere it
    agrees with ``phi(2a/(1+|a|^2), x)``.
    """
    a = _interior(a)
    x = _check_points(x, a.size)
    aa = a @ a
    diff = x - a
    num = a * np.asarray(np.sum(diff * diff, axis=-1))[..., None] + (1.0 - aa) * (a - x)
    den = np.asarray(aa * np.sum(x * x, axis=-1) - 2.0 * (x @ a) + 1.0)
    return num / den[..., None]


def inversion_point(b) -> np.ndarray:
    b = as_vec(b)
    bb = b @ b
    if bb == 0.0:
        raise ZeroVector('the origin has no inversion point')
    return b / bb


def image_subsphere(E0: AffinePlane, a):
    """
    Center and radius of the image of the great subsphere E0 under phi_a.
    """
    a = _interior(a)
    if np.linalg.norm(E0.offset) > fl.get_config().tolerances.plane_membership:
        raise CenterNotOnPlane('image_subsphere expects a plane through the origin')
    ap = E0.projector() @ a
    center = phi(a, ap)
    radius = np.sqrt((1.0 - a @ a) / (1.0 - ap @ ap))
    return center, float(radius)


def plane_image_under_phi(a, E: AffinePlane) -> AffinePlane:
    a = _interior(a, 0.0)
    sec = cross_section(E)
    pts = [sec.center] + [sec.center + 0.5 * sec.radius * E.basis[:, j] for j in range(E.k)]
    return plane_from_points(phi(a, np.array(pts)))


def automorphism_identities(a, x, y):
    """
    Residuals of the basic automorphism identities at (a, x, y).

    Returns
    -------
    dict
        involution, base_points, inner_product, norm and (for unit x) sphere residuals.
    """
    a = _interior(a)
    x = as_vec(x, a.size)
    y = as_vec(y, a.size)
    fx, fy = phi(a, x), phi(a, y)
    aa, xa, ya = a @ a, x @ a, y @ a
    res = {
        'involution': float(np.linalg.norm(phi(a, fx) - x)),
        'base_points': float(np.linalg.norm(phi(a, np.zeros_like(a)) - a) + np.linalg.norm(phi(a, a))),
        'inner_product': float(abs((1.0 - fx @ fy) - (1.0 - aa) * (1.0 - x @ y) / ((1.0 - xa) * (1.0 - ya)))),
        'norm': float(abs((1.0 - fx @ fx) - (1.0 - aa) * (1.0 - x @ x) / (1.0 - xa) ** 2)),
    }
    u = x / np.linalg.norm(x)
    res['sphere'] = float(abs(np.linalg.norm(phi(a, u)) - 1.0))
    return res
