__all__ = ['ThetaValue',
           'MobiusClass',
           'MobiusMatrix',
           'Subsphere',
           'FixedPointSet',
           'CrossSectionFrame',
           'tau',
           'rho',
           'sigma',
           'symmetry',
           'weight',
           'v_map',
           'fixed_points',
           'theta',
           'theta_with_direction',
           'theta_of_directions',
           'pair_theta',
           'classify_theta',
           'classify',
           'multiplier',
           'detect_rational',
           'period_residual',
           'detect_period',
           'group_is_finite',
           'cross_section_frame',
           'induced_mobius',
           'orbit',
           'orbit_table']

import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

import funklab as fl
from funklab.geometry import Center, as_vec, as_sphere_point, make_center, random_sphere_points
from funklab.errors import (OnSphere, CoincidentPoint, CoincidentCenters, CoincidentDirections,
                            ZeroVector, DimensionMismatch, SingularPoint, DegenerateSection, Conflict)

logger = logging.getLogger(__name__)


#
# Point symmetries and weights
#

def tau(a, x) -> np.ndarray:
    """
    Second intersection of the line through x and a with the unit sphere.

    Parameters
    ----------
    a : array_like
        Center with |a| != 1, interior or exterior.
    x : array_like
        Sphere points, shape (n,) or (m, n).

    Returns
    -------
    np.ndarray
        Unit vectors with the shape of ``x``.
    """
    tol = fl.get_config().tolerances
    a = as_vec(a)
    if abs(np.linalg.norm(a) - 1.0) <= tol.verdict:
        raise OnSphere('symmetry center %s lies on the unit sphere' % a.tolist())
    x = np.asarray(x, dtype=float)
    d = a - x
    dd = np.asarray(np.sum(d * d, axis=-1))
    if np.any(np.sqrt(dd) < tol.degeneracy):
        raise CoincidentPoint('point coincides with the symmetry center')
    t = 2.0 * (1.0 - np.asarray(x @ a)) / dd
    y = x + t[..., None] * d
    return y / np.linalg.norm(y, axis=-1, keepdims=True)


def rho(a, x, k) -> np.ndarray:
    k = int(k)
    if k < 1:
        raise ValueError('plane dimension k must be at least 1')
    a = as_vec(a)
    x = np.asarray(x, dtype=float)
    d = x - a
    dd = np.asarray(np.sum(d * d, axis=-1))
    if k == 1:
        return np.ones_like(dd)
    if np.any(np.sqrt(dd) < fl.get_config().tolerances.degeneracy):
        raise CoincidentPoint('point coincides with the weight center')
    return (abs(1.0 - a @ a) / dd) ** (k - 1)


def sigma(b, x) -> np.ndarray:
    b = as_vec(b)
    bb = b @ b
    if bb == 0.0:
        raise ZeroVector('reflection normal must be non zero')
    x = np.asarray(x, dtype=float)
    return x - (2.0 * np.asarray(x @ b) / bb)[..., None] * b


def symmetry(center, x) -> np.ndarray:
    """
    tau for finite centers, the reflection sigma for centers at infinity.
    """
    if isinstance(center, Center):
        return tau(center.vector, x) if center.is_finite else sigma(center.vector, x)
    return tau(center, x)


def weight(center, x, k) -> np.ndarray:
    if isinstance(center, Center) and not center.is_finite:
        x = np.asarray(x, dtype=float)
        return np.ones(x.shape[:-1])
    if isinstance(center, Center):
        center = center.vector
    return rho(center, x, k)


def v_map(a, b, x) -> np.ndarray:
    return symmetry(b, symmetry(a, x))


#
# Fixed points
#

@dataclass(frozen=True, eq=False)
class Subsphere:
    """
    Sphere of the given radius around ``center`` inside center + span(basis).
    """
    center: np.ndarray
    radius: float
    basis: np.ndarray

    def points(self) -> Optional[np.ndarray]:
        if self.radius == 0.0 or self.basis.shape[1] == 0:
            return self.center[None, :].copy()
        if self.basis.shape[1] == 1:
            u = self.basis[:, 0]
            return np.array([self.center + self.radius * u, self.center - self.radius * u])
        return None

    def to_dict(self):
        return {'center': self.center.tolist(), 'radius': self.radius, 'dimension': int(self.basis.shape[1]) - 1}


@dataclass(frozen=True, eq=False)
class FixedPointSet:
    a: np.ndarray
    b: np.ndarray
    line_points: List[np.ndarray]
    z: Optional[Subsphere]

    def in_singular_set(self, x, tol) -> bool:
        x = np.asarray(x, dtype=float)
        return (self.z is not None and abs(x @ self.a - 1.0) <= tol and abs(x @ self.b - 1.0) <= tol)

    def contains(self, x, tol=1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if any(np.linalg.norm(x - p) <= tol for p in self.line_points):
            return True
        return self.in_singular_set(x, tol)

    def to_dict(self):
        return {'line_points': [p.tolist() for p in self.line_points],
                'z': None if self.z is None else self.z.to_dict()}


def fixed_points(a, b) -> FixedPointSet:
    """
    Fixed point set of T = tau_b tau_a: the subsphere {<x,a> = <x,b> = 1} of the
    sphere together with the points where the line through a and b meets it.
    """
    tol = fl.get_config().tolerances
    a = as_vec(a)
    b = as_vec(b, a.size)
    d = b - a
    dd = d @ d
    if np.sqrt(dd) <= tol.sphere:
        raise CoincidentCenters('centers coincide')

    # line through the centers: |a + t d|^2 = 1
    ad = a @ d
    disc = ad * ad - dd * (a @ a - 1.0)
    scale = max(1.0, ad * ad, dd * abs(a @ a - 1.0))
    line_points = []
    if abs(disc) <= 1e-12 * scale:
        p = a - (ad / dd) * d
        line_points.append(p / np.linalg.norm(p))
    elif disc > 0.0:
        root = np.sqrt(disc)
        for t in ((-ad + root) / dd, (-ad - root) / dd):
            p = a + t * d
            line_points.append(p / np.linalg.norm(p))

    # Z: <x,a> = <x,b> = 1 on the sphere
    z = None
    A = np.vstack([a, b])
    u, s, vt = np.linalg.svd(A)
    if s[1] > 1e-12 * s[0]:
        x0 = np.linalg.lstsq(A, np.ones(2), rcond=None)[0]
        r2 = 1.0 - x0 @ x0
        if r2 >= -tol.sphere:
            null = vt[2:].T
            radius = float(np.sqrt(max(r2, 0.0)))
            if radius <= tol.sphere:
                radius = 0.0
            if null.shape[1] > 0 or radius == 0.0:
                z = Subsphere(x0, radius, null)
    return FixedPointSet(a, b, line_points, z)


#
# Invariants and classification
#

@dataclass(frozen=True)
class ThetaValue:
    kind: str
    value: float = 0.0
    theta_squared: float = 0.0

    @property
    def is_real(self) -> bool:
        return self.kind == 'real'

    def square(self) -> float:
        return self.value ** 2 if self.is_real else self.theta_squared

    def to_json(self):
        if self.is_real:
            return self.value
        return {'imaginary': float(np.sqrt(-self.theta_squared))}


def _real(v):
    return ThetaValue('real', float(v), float(v) ** 2)


def _imaginary(sq):
    return ThetaValue('imaginary', 0.0, float(sq))


def theta(a, b, tol=None) -> ThetaValue:
    tol = fl.get_config().tolerances.verdict if tol is None else tol
    a = as_vec(a)
    b = as_vec(b, a.size)
    p = a @ b
    prod = (1.0 - a @ a) * (1.0 - b @ b)
    if abs(p - 1.0) <= tol:
        return _real(0.0)
    if prod > 0.0:
        return _real((p - 1.0) / np.sqrt(prod))
    return _imaginary((p - 1.0) ** 2 / prod)


def theta_with_direction(a, direction, tol=None) -> ThetaValue:
    """
    Limit of theta(a, t*direction) as t grows: <a,d>/sqrt(|a|^2 - 1).
    """
    tol = fl.get_config().tolerances.verdict if tol is None else tol
    a = as_vec(a)
    d = as_sphere_point(direction, a.size)
    ad = a @ d
    aa = a @ a
    if abs(ad) <= tol:
        return _real(0.0)
    if aa > 1.0:
        return _real(ad / np.sqrt(aa - 1.0))
    return _imaginary(ad * ad / (aa - 1.0))


def theta_of_directions(d1, d2) -> ThetaValue:
    d1 = as_sphere_point(d1)
    d2 = as_sphere_point(d2, d1.size)
    return _real(float(np.clip(d1 @ d2, -1.0, 1.0)))


def _as_pair(a, b):
    ca = a if isinstance(a, Center) else make_center(a)
    cb = b if isinstance(b, Center) else make_center(b)
    if ca.dim != cb.dim:
        raise DimensionMismatch('centers of dimension %d and %d' % (ca.dim, cb.dim))
    tol = fl.get_config().tolerances
    if ca.is_finite and cb.is_finite:
        if np.linalg.norm(ca.vector - cb.vector) <= tol.sphere:
            raise CoincidentCenters('centers coincide')
    elif not ca.is_finite and not cb.is_finite:
        if min(np.linalg.norm(ca.vector - cb.vector), np.linalg.norm(ca.vector + cb.vector)) <= 1e-10:
            raise CoincidentDirections('directions define the same mirror')
    return ca, cb


def pair_theta(a, b, tol=None) -> ThetaValue:
    ca, cb = _as_pair(a, b)
    if ca.is_finite and cb.is_finite:
        return theta(ca.vector, cb.vector, tol)
    if ca.is_finite:
        return theta_with_direction(ca.vector, cb.vector, tol)
    if cb.is_finite:
        return theta_with_direction(cb.vector, ca.vector, tol)
    return theta_of_directions(ca.vector, cb.vector)


@dataclass(frozen=True)
class MobiusClass:
    """
    Type of the circle dynamics of T: hyperbolic, parabolic, elliptic or loxodromic.
    """
    kind: str
    theta: ThetaValue
    kappa: Optional[float] = None
    rational: Optional[Tuple[int, int]] = None
    near_boundary: bool = False
    boundary_gap: float = 0.0

    @property
    def is_elliptic(self) -> bool:
        return self.kind == 'elliptic'

    @property
    def trace(self) -> complex:
        if self.theta.is_real:
            return complex(2.0 * self.theta.value, 0.0)
        return complex(0.0, 2.0 * np.sqrt(-self.theta.theta_squared))

    def to_dict(self):
        return {'class': self.kind,
                'theta': self.theta.to_json(),
                'kappa': self.kappa,
                'rational': None if self.rational is None else list(self.rational),
                'near_boundary': self.near_boundary}


# rotation numbers known in closed form
_EXACT = ((0.0, 0.5, (1, 2)), (0.5, 1.0 / 3.0, (1, 3)), (-0.5, 2.0 / 3.0, (2, 3)))


def classify_theta(th: ThetaValue, tol=None, config=None) -> MobiusClass:
    config = config or fl.get_config()
    tol = config.tolerances.verdict if tol is None else tol
    if not th.is_real:
        return MobiusClass('loxodromic', th)
    v = th.value
    gap = abs(abs(v) - 1.0)
    if gap <= tol:
        if gap > 0.0:
            logger.warning('theta = %.15g is within %.1e of the parabolic boundary', v, tol)
        return MobiusClass('parabolic', th, near_boundary=gap > 0.0, boundary_gap=gap)
    if abs(v) > 1.0:
        return MobiusClass('hyperbolic', th)
    for value, kappa, pq in _EXACT:
        if abs(v - value) <= 1e-12:
            return MobiusClass('elliptic', th, kappa=kappa, rational=pq)
    kappa = math.acos(v) / math.pi
    return MobiusClass('elliptic', th, kappa=kappa, rational=detect_rational(kappa, config.qmax, config.eps))


def classify(a, b, tol=None, config=None) -> MobiusClass:
    """
    Classifies T for a pair of centers (finite or at infinity).

    Parameters
    ----------
    a, b : Center or array_like
        The two centers.
    tol : float, optional
        Width of the parabolic band around |theta| = 1.

    Returns
    -------
    MobiusClass
    """
    mclass = classify_theta(pair_theta(a, b), tol, config)
    logger.debug('classified pair as %s (kappa=%s, rational=%s)', mclass.kind, mclass.kappa, mclass.rational)
    return mclass


def multiplier(mclass: MobiusClass) -> Optional[float]:
    """
    Derivative of T at its attracting fixed point (hyperbolic pairs only).
    """
    if mclass.kind != 'hyperbolic':
        return None
    s = (2.0 * mclass.theta.value) ** 2 - 2.0
    return float((s - np.sqrt(s * s - 4.0)) / 2.0)


def detect_rational(kappa, qmax=64, eps=1e-9) -> Optional[Tuple[int, int]]:
    """
    First continued fraction convergent p/q of ``kappa`` with q <= qmax and
    |kappa - p/q| <= eps, or None.
    """
    if not 0.0 <= kappa <= 1.0:
        raise ValueError('rotation number must lie in [0, 1], got %r' % kappa)
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    x = float(kappa)
    for _ in range(64):
        ai = math.floor(x)
        p0, p1 = p1, ai * p1 + p0
        q0, q1 = q1, ai * q1 + q0
        if q1 > qmax:
            break
        if abs(kappa - p1 / q1) <= eps:
            return (int(p1), int(q1))
        frac = x - ai
        if frac <= 0.0:
            break
        x = 1.0 / frac
    return None


def period_residual(a, b, q, samples=32, rng=None) -> float:
    ca, cb = _as_pair(a, b)
    rng = rng if rng is not None else fl.get_config().rng(1)
    x0 = random_sphere_points(ca.dim, samples, rng)
    x = x0
    for _ in range(q):
        x = v_map(ca, cb, x)
    return float(np.max(np.linalg.norm(x - x0, axis=1)))


def detect_period(a, b, qmax=None, eps=None, samples=None, config=None) -> Optional[int]:
    """
    Period of T, confirmed numerically, or None when T is not periodic.

    Raises
    ------
    Conflict
        When the rotation number predicts a period the iteration does not show.
    """
    config = config or fl.get_config()
    updates = {k: v for k, v in (('qmax', qmax), ('eps', eps), ('period_samples', samples)) if v is not None}
    if updates:
        config = config.replace(**updates)
    mclass = classify(a, b, config=config)
    if not mclass.is_elliptic or mclass.rational is None:
        return None
    q = mclass.rational[1]
    residual = period_residual(a, b, q, config.period_samples, config.rng(1))
    logger.debug('period %d predicted, residual after %d steps %.3e', q, q, residual)
    if residual <= config.tolerances.period_residual:
        return q
    raise Conflict(q, residual)


def group_is_finite(a, b, config=None) -> bool:
    """
    Whether the group generated by the two symmetries is finite (dihedral of order 2q).
    """
    try:
        return detect_period(a, b, config=config) is not None
    except Conflict:
        return False


#
# Two dimensional cross-sections and Moebius matrices
#

@dataclass(frozen=True, eq=False)
class CrossSectionFrame:
    x0: np.ndarray
    c: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    za: complex
    zb: complex

    @property
    def scale(self) -> float:
        return float(np.sqrt(1.0 - self.c @ self.c))

    def zeta(self, x) -> np.ndarray:
        d = np.asarray(x, dtype=float) - self.c
        return (d @ self.e1 + 1j * (d @ self.e2)) / self.scale

    def zeta_inverse(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return self.c + self.scale * (z.real[..., None] * self.e1 + z.imag[..., None] * self.e2)

    def circle(self, m) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(m) / m
        return self.zeta_inverse(np.exp(1j * t))

    def plane_distance(self, x) -> np.ndarray:
        d = np.asarray(x, dtype=float) - self.c
        inplane = (d @ self.e1)[..., None] * self.e1 + (d @ self.e2)[..., None] * self.e2
        return np.linalg.norm(d - inplane, axis=-1)


def cross_section_frame(a, b, x0) -> CrossSectionFrame:
    """
    Frame of the two-plane through x0, a and b with its complex coordinate zeta.
    """
    tol = fl.get_config().tolerances
    a = as_vec(a)
    b = as_vec(b, a.size)
    x0 = as_sphere_point(x0, a.size)
    if fixed_points(a, b).in_singular_set(x0, tol.verdict):
        raise SingularPoint('x0 lies on the fixed subsphere of T')

    candidates = [a - x0, b - x0] + list(np.eye(a.size))
    frame = []
    for v in candidates:
        w = v - sum((v @ f) * f for f in frame) if frame else v.copy()
        if np.linalg.norm(w) > 1e-9 * max(1.0, np.linalg.norm(v)):
            frame.append(w / np.linalg.norm(w))
        if len(frame) == 2:
            break
    e1, e2 = frame
    c = x0 - (x0 @ e1) * e1 - (x0 @ e2) * e2
    if 1.0 - c @ c <= tol.sphere:
        raise DegenerateSection('cross-section circle degenerates to a point')

    probe = CrossSectionFrame(x0, c, e1, e2, 0j, 0j)
    za = complex(probe.zeta(a))
    zb = complex(probe.zeta(b))
    return CrossSectionFrame(x0, c, e1, e2, za, zb)


@dataclass(frozen=True, eq=False)
class MobiusMatrix:
    matrix: np.ndarray

    def apply(self, z) -> np.ndarray:
        (alpha, beta), (gamma, delta) = self.matrix
        z = np.asarray(z, dtype=complex)
        return (alpha * z + beta) / (gamma * z + delta)

    def trace(self) -> complex:
        return complex(self.matrix[0, 0] + self.matrix[1, 1])

    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def to_dict(self):
        return {'real': self.matrix.real.tolist(), 'imag': self.matrix.imag.tolist()}


def induced_mobius(frame: CrossSectionFrame) -> MobiusMatrix:
    za, zb = frame.za, frame.zb
    D = (1.0 - abs(za) ** 2) * (1.0 - abs(zb) ** 2)
    if abs(D) < fl.get_config().tolerances.degeneracy:
        raise DegenerateSection('a center lies on the section circle')
    m = np.array([[np.conj(za) * zb - 1.0, za - zb],
                  [np.conj(za) - np.conj(zb), za * np.conj(zb) - 1.0]], dtype=complex)
    return MobiusMatrix(m / np.sqrt(complex(D)))


#
# Orbits
#

def orbit(a, b, x0, max_iter=1000) -> np.ndarray:
    """
    Forward orbit [x0, T x0, ...], stopped early when it returns to x0.
    """
    tol = fl.get_config().tolerances.orbit_return
    ca, cb = _as_pair(a, b)
    x0 = as_sphere_point(x0, ca.dim)
    points = [x0]
    x = x0
    for _ in range(int(max_iter)):
        x = v_map(ca, cb, x)
        if np.linalg.norm(x - x0) <= tol:
            break
        points.append(x)
    return np.array(points)


def orbit_table(points):
    points = np.asarray(points, dtype=float)
    header = ['iteration'] + ['x%d' % (i + 1) for i in range(points.shape[1])] + ['distance_to_start']
    dist = np.linalg.norm(points - points[0], axis=1)
    rows = [[i] + p.tolist() + [float(d)] for i, (p, d) in enumerate(zip(points, dist))]
    return header, rows
