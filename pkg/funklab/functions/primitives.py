__all__ = ['Monomial', 'LinearForm', 'LinearProduct', 'Harmonic', 'CapBump']

import numpy as np
from scipy.special import lpmv, gammaln

from funklab.functions.base import SphericalFunction
from funklab.errors import DimensionMismatch, ZeroVector


def _points(points, n):
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != n:
        raise DimensionMismatch('function of R^%d evaluated on points of shape %s' % (n, points.shape))
    return points


class Monomial( SphericalFunction ):

    def __init__(self, exponents):
        self.__exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in self.__exponents):
            raise ValueError('monomial exponents must be non negative')

    def degree(self):
        return sum(self.__exponents)

    def evaluate(self, points):
        points = _points(points, len(self.__exponents))
        return np.prod(points ** np.array(self.__exponents), axis=1)

    def describe(self):
        return {'kind': 'monomial', 'exponents': list(self.__exponents)}


class LinearForm( SphericalFunction ):

    def __init__(self, u):
        self.__u = np.array(u, dtype=float)

    def evaluate(self, points):
        return _points(points, self.__u.size) @ self.__u

    def describe(self):
        return {'kind': 'linear', 'u': self.__u.tolist()}


class LinearProduct( SphericalFunction ):
    """
    x -> prod_j <x, b_j>, odd under the reflection across every b_j^perp.
    """

    def __init__(self, normals):
        self.__normals = np.array(normals, dtype=float)
        if self.__normals.ndim != 2 or self.__normals.shape[0] == 0:
            raise ValueError('LinearProduct needs a non empty list of normals')

    def normals(self):
        return self.__normals.copy()

    def evaluate(self, points):
        points = _points(points, self.__normals.shape[1])
        return np.prod(points @ self.__normals.T, axis=1)

    def describe(self):
        return {'kind': 'linear_product', 'normals': self.__normals.tolist()}


class Harmonic( SphericalFunction ):
    """
    Real orthonormal spherical harmonic Y_l^m on S^2.

    m > 0 uses cos(m phi), m < 0 uses sin(|m| phi).
    """

    def __init__(self, l, m):
        l, m = int(l), int(m)
        if l < 0 or abs(m) > l:
            raise ValueError('harmonic degree/order out of range: l=%d m=%d' % (l, m))
        self.__l = l
        self.__m = m
        am = abs(m)
        norm = np.sqrt((2 * l + 1) / (4.0 * np.pi) * np.exp(gammaln(l - am + 1) - gammaln(l + am + 1)))
        self.__norm = norm if m == 0 else np.sqrt(2.0) * norm

    def degree(self):
        return self.__l

    def evaluate(self, points):
        points = _points(points, 3)
        r = np.linalg.norm(points, axis=1)
        z = np.clip(points[:, 2] / r, -1.0, 1.0)
        az = np.arctan2(points[:, 1], points[:, 0])
        am = abs(self.__m)
        values = self.__norm * lpmv(am, self.__l, z)
        if self.__m > 0:
            values = values * np.cos(am * az)
        elif self.__m < 0:
            values = values * np.sin(am * az)
        return values

    def describe(self):
        return {'kind': 'harmonic', 'l': self.__l, 'm': self.__m}


class CapBump( SphericalFunction ):
    """
    Smooth bump exp(1 - 1/(1 - (d/r)^2)) of the geodesic distance d to ``e``,
    supported in the open cap of radius r and equal to 1 at e.
    """

    def __init__(self, e, radius):
        e = np.array(e, dtype=float)
        norm = np.linalg.norm(e)
        if norm == 0.0:
            raise ZeroVector('bump center must be a non zero vector')
        if not 0.0 < radius <= np.pi:
            raise ValueError('bump radius must lie in (0, pi], got %r' % radius)
        self.__e = e / norm
        self.__radius = float(radius)

    def center(self):
        return self.__e.copy()

    def radius(self):
        return self.__radius

    def evaluate(self, points):
        points = _points(points, self.__e.size)
        c = (points @ self.__e) / np.linalg.norm(points, axis=1)
        s = np.arccos(np.clip(c, -1.0, 1.0)) / self.__radius
        inside = s < 1.0
        t = np.where(inside, 1.0 - s * s, 1.0)
        return np.where(inside, np.exp(1.0 - 1.0 / t), 0.0)

    def describe(self):
        return {'kind': 'bump', 'e': self.__e.tolist(), 'radius': self.__radius}
