__all__ = ['SphericalFunction',
           'Constant',
           'Sum',
           'Product',
           'Scaled',
           'Composed',
           'Iterated',
           'lift',
           'antipodal',
           'reflect']

from functools import partial
from numbers import Real

import numpy as np

import funklab as fl


class SphericalFunction( object ):
    """
    Immutable expression tree evaluated on points of the unit sphere.

    Subclasses implement ``evaluate(points)`` for an (m, n) array and
    return m values. Nodes hold no caches, so a tree may be shared freely.
    """

    def evaluate(self, points):
        raise NotImplementedError

    def describe(self):
        raise NotImplementedError

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            return float(self.evaluate(x[None, :])[0])
        return self.evaluate(x)

    def __add__(self, other):
        return Sum([self, lift(other)])

    def __radd__(self, other):
        return Sum([lift(other), self])

    def __sub__(self, other):
        return Sum([self, Scaled(-1.0, lift(other))])

    def __rsub__(self, other):
        return Sum([lift(other), Scaled(-1.0, self)])

    def __neg__(self):
        return Scaled(-1.0, self)

    def __mul__(self, other):
        if isinstance(other, Real):
            return Scaled(float(other), self)
        return Product([self, lift(other)])

    def __rmul__(self, other):
        if isinstance(other, Real):
            return Scaled(float(other), self)
        return Product([lift(other), self])

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.describe())


def lift(obj) -> SphericalFunction:
    if isinstance(obj, SphericalFunction):
        return obj
    if isinstance(obj, Real):
        return Constant(float(obj))
    raise TypeError('cannot use %r as a spherical function' % (obj,))


class Constant( SphericalFunction ):

    def __init__(self, value):
        self.__value = float(value)

    def value(self):
        return self.__value

    def evaluate(self, points):
        return np.full(np.shape(points)[0], self.__value)

    def describe(self):
        return {'kind': 'constant', 'value': self.__value}


class Sum( SphericalFunction ):

    def __init__(self, terms):
        self.__terms = tuple(terms)

    def evaluate(self, points):
        values = np.zeros(np.shape(points)[0])
        for term in self.__terms:
            values = values + term.evaluate(points)
        return values

    def describe(self):
        return {'op': 'sum', 'terms': [t.describe() for t in self.__terms]}


class Product( SphericalFunction ):

    def __init__(self, factors):
        self.__factors = tuple(factors)

    def evaluate(self, points):
        values = np.ones(np.shape(points)[0])
        for factor in self.__factors:
            values = values * factor.evaluate(points)
        return values

    def describe(self):
        return {'op': 'product', 'factors': [f.describe() for f in self.__factors]}


class Scaled( SphericalFunction ):

    def __init__(self, factor, f):
        self.__factor = float(factor)
        self.__f = f

    def evaluate(self, points):
        return self.__factor * self.__f.evaluate(points)

    def describe(self):
        return {'op': 'scale', 'factor': self.__factor, 'f': self.__f.describe()}


class Composed( SphericalFunction ):
    """
    x -> weight(x) * f(mapping(x)).

    Parameters
    ----------
    f : SphericalFunction
        Inner function.
    mapping : callable
        Vectorized point map of the sphere onto itself.
    weight : callable, optional
        Vectorized positive weight, 1 when omitted.
    label : str
        Name of the operator used by ``describe``.
    params : dict, optional
        JSON friendly parameters of the operator.
    """

    def __init__(self, f, mapping, weight=None, label='map', params=None):
        self.__f = f
        self.__mapping = mapping
        self.__weight = weight
        self.__label = label
        self.__params = dict(params or {})

    def inner(self):
        return self.__f

    def evaluate(self, points):
        points = np.asarray(points, dtype=float)
        values = self.__f.evaluate(self.__mapping(points))
        if self.__weight is not None:
            values = self.__weight(points) * values
        return values

    def describe(self):
        return {'op': 'compose', 'map': self.__label, 'params': self.__params,
                'weighted': self.__weight is not None, 'f': self.__f.describe()}


class Iterated( SphericalFunction ):
    """
    ``times``-fold application of a weighted composition, evaluated by a loop:
    x -> prod_{j<N} weight(T^j x) * f(T^N x).
    """

    def __init__(self, f, mapping, weight, times, label='iterate', params=None):
        if times < 0:
            raise ValueError('iteration count must be non negative')
        self.__f = f
        self.__mapping = mapping
        self.__weight = weight
        self.__times = int(times)
        self.__label = label
        self.__params = dict(params or {})

    def evaluate(self, points):
        x = np.asarray(points, dtype=float)
        w = np.ones(x.shape[0])
        for _ in range(self.__times):
            if self.__weight is not None:
                w = w * self.__weight(x)
            x = self.__mapping(x)
        return w * self.__f.evaluate(x)

    def describe(self):
        return {'op': 'iterate', 'map': self.__label, 'params': self.__params,
                'times': self.__times, 'f': self.__f.describe()}


def _negate(x):
    return -x


def antipodal(f) -> SphericalFunction:
    return Composed(f, _negate, label='antipodal')


def reflect(f, direction) -> SphericalFunction:
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    return Composed(f, partial(fl.sigma, d), label='reflect', params={'direction': d.tolist()})
