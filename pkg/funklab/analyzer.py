__all__ = ['InjectivityVerdict',
           'ReflectionFamily',
           'GroupClosure',
           'INJECTIVE',
           'NON_INJECTIVE',
           'INDETERMINATE',
           'discriminant',
           'pair_discriminant',
           'decide',
           'decide_pair',
           'decide_finite_infinite',
           'decide_infinite_pair',
           'decide_multi',
           'reflection_group_finite',
           'coxeter_orders',
           'decide_slice_family']

import math
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, List, Optional, Tuple

import numpy as np

import funklab as fl
from funklab.geometry import Center, as_vec, as_center, as_sphere_point, make_center, make_infinite_center
from funklab.dynamics import MobiusClass
from funklab.functions import LinearProduct
from funklab.errors import CoincidentDirections, InvalidFamily, Conflict

logger = logging.getLogger(__name__)

INJECTIVE = 'injective'
NON_INJECTIVE = 'non-injective'
INDETERMINATE = 'indeterminate'

MULTI_CENTER_OPEN = ('open question: for more than two centers only the pairwise sufficient '
                     'condition is known; whether a finite symmetry group forces a common '
                     'kernel is unresolved')


@dataclass
class InjectivityVerdict:
    verdict: str
    reason: str = ''
    mobius: Optional[MobiusClass] = None
    period: Optional[int] = None
    rotation: Optional[Tuple[int, int]] = None
    discriminant: Optional[float] = None
    witness: Any = None
    notes: List[str] = field(default_factory=list)
    pairs: List[dict] = field(default_factory=list)

    @property
    def is_injective(self) -> bool:
        return self.verdict == INJECTIVE

    def to_dict(self):
        m = self.mobius
        d = {'verdict': self.verdict,
             'reason': self.reason,
             'class': None if m is None else m.kind,
             'theta': None if m is None else m.theta.to_json(),
             'kappa': None if m is None else m.kappa,
             'rational': None if m is None or m.rational is None else list(m.rational),
             'period': self.period,
             'rotation': None if self.rotation is None else list(self.rotation),
             'discriminant': self.discriminant,
             'notes': list(self.notes)}
        if self.witness is not None:
            d['witness'] = self.witness.describe()
        if self.pairs:
            d['pairs'] = list(self.pairs)
        return d


def discriminant(a, b) -> float:
    """
    (<a,b> - 1)^2 - (1 - |a|^2)(1 - |b|^2); non negative iff the line through
    the centers meets the sphere.
    """
    a = as_vec(a)
    b = as_vec(b, a.size)
    return float((a @ b - 1.0) ** 2 - (1.0 - a @ a) * (1.0 - b @ b))


def pair_discriminant(c1: Center, c2: Center) -> float:
    if c1.is_finite and c2.is_finite:
        return discriminant(c1.vector, c2.vector)
    if c1.is_finite or c2.is_finite:
        a, d = (c1.vector, c2.vector) if c1.is_finite else (c2.vector, c1.vector)
        return float((a @ d) ** 2 - (a @ a - 1.0))
    return float((c1.vector @ c2.vector) ** 2 - 1.0)


_NON_ELLIPTIC = {
    'hyperbolic': 'hyperbolic dynamics: T has an attracting and a repelling fixed point',
    'parabolic': 'parabolic dynamics: T has a single attracting fixed point',
    'loxodromic': 'loxodromic dynamics: the centers are separated by the sphere',
}


def decide(c1, c2, config=None) -> InjectivityVerdict:
    """
    Injectivity of the paired transform for two centers, finite or at infinity.
    """
    config = config or fl.get_config()
    c1 = as_center(c1)
    c2 = as_center(c2)
    mclass = fl.classify(c1, c2, config=config)
    disc = pair_discriminant(c1, c2)
    notes = []
    if mclass.near_boundary:
        notes.append('theta lies within %.1e of the parabolic boundary' % mclass.boundary_gap)

    if not mclass.is_elliptic:
        verdict = InjectivityVerdict(INJECTIVE, _NON_ELLIPTIC[mclass.kind], mclass, discriminant=disc, notes=notes)
    elif mclass.rational is None:
        verdict = InjectivityVerdict(INJECTIVE, 'no rational rotation number with q <= %d' % config.qmax,
                                     mclass, discriminant=disc, notes=notes)
    else:
        try:
            q = fl.detect_period(c1, c2, config=config)
        except Conflict as e:
            notes.append(str(e))
            verdict = InjectivityVerdict(INDETERMINATE, 'period detector stages disagree', mclass,
                                         discriminant=disc, notes=notes)
        else:
            if mclass.rational == (1, 2) and mclass.theta.value == 0.0:
                notes.append('the symmetries commute: T is an involution')
            verdict = InjectivityVerdict(NON_INJECTIVE, 'periodic dynamics with period %d' % q, mclass,
                                         period=q, rotation=mclass.rational, discriminant=disc, notes=notes)
    logger.info('pair %s / %s: %s', c1, c2, verdict.verdict)
    return verdict


def decide_pair(a, b, config=None) -> InjectivityVerdict:
    return decide(make_center(a), make_center(b), config)


def decide_finite_infinite(a, direction, config=None) -> InjectivityVerdict:
    """
    Pair of a shifted Funk transform and a parallel slice transform.

    Interior centers give loxodromic dynamics unless the center lies on the
    mirror of ``direction``, where the two symmetries commute. At a = 0 with
    direction e_n the coordinate x_n is odd under both the antipodal map and
    the reflection, so it lies in both kernels.
    """
    c = make_center(a)
    d = make_infinite_center(direction)
    verdict = decide(c, d, config)
    if c.is_interior and verdict.is_injective:
        verdict.notes.append('interior center: <a,dir>^2 <= |a|^2 - 1 cannot hold')
    return verdict


def decide_infinite_pair(d1, d2, config=None) -> InjectivityVerdict:
    return decide(make_infinite_center(d1), make_infinite_center(d2), config)


def decide_multi(centers, config=None) -> InjectivityVerdict:
    """
    Sufficient test for families of more than two centers: one injective
    pair makes the whole family injective.
    """
    config = config or fl.get_config()
    centers = [as_center(c) for c in centers]
    if len(centers) < 2:
        raise InvalidFamily('at least two centers are required')
    if len(centers) == 2:
        return decide(centers[0], centers[1], config)
    if all(not c.is_finite for c in centers):
        return decide_slice_family(ReflectionFamily([c.vector for c in centers]), config=config)

    pairs = []
    injective = None
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            v = decide(centers[i], centers[j], config)
            pairs.append({'pair': [i, j], 'verdict': v.verdict, 'period': v.period,
                          'class': None if v.mobius is None else v.mobius.kind})
            if v.is_injective and injective is None:
                injective = (i, j, v)
    if injective is not None:
        i, j, v = injective
        return InjectivityVerdict(INJECTIVE, 'pair (%d, %d) is injective: %s' % (i, j, v.reason),
                                  v.mobius, pairs=pairs)
    return InjectivityVerdict(INDETERMINATE, MULTI_CENTER_OPEN, pairs=pairs,
                              notes=['every pair has periodic dynamics'])


#
# Families of parallel slice transforms
#

class ReflectionFamily( object ):

    def __init__(self, normals):
        normals = [as_sphere_point(b) for b in normals]
        if not normals:
            raise InvalidFamily('a reflection family needs at least one normal')
        n = normals[0].size
        for i, b in enumerate(normals):
            if b.size != n:
                raise InvalidFamily('normals of mixed dimension')
            for c in normals[:i]:
                if min(np.linalg.norm(b - c), np.linalg.norm(b + c)) <= 1e-10:
                    raise CoincidentDirections('normals define the same mirror')
        self.__normals = np.array(normals)

    def normals(self):
        return self.__normals.copy()

    def dim(self):
        return self.__normals.shape[1]

    def __len__(self):
        return self.__normals.shape[0]


@dataclass
class GroupClosure:
    finite: bool
    mirrors: Optional[np.ndarray]
    count: int
    cap: int

    def to_dict(self):
        d = {'finite': self.finite, 'mirror_count': self.count, 'cap': self.cap}
        if self.finite:
            d['mirror_normals'] = self.mirrors.tolist()
        return d


def _canonical(v, tol):
    idx = np.flatnonzero(np.abs(v) > tol)
    return -v if idx.size and v[idx[0]] < 0 else v


def reflection_group_finite(B: ReflectionFamily, cap=None, config=None) -> GroupClosure:
    """
    Closes the set of mirrors of B under the reflections of B.

    Mirrors are compared modulo sign; the closure reports Infinite as soon as
    more than ``cap`` mirrors appear.
    """
    config = config or fl.get_config()
    cap = config.group_cap if cap is None else int(cap)
    tol = config.tolerances.dedup
    gens = B.normals()
    store = np.empty((cap + 1, B.dim()))
    count = 0

    def known(w):
        if count == 0:
            return False
        s = store[:count]
        return np.min(np.minimum(np.linalg.norm(s - w, axis=1), np.linalg.norm(s + w, axis=1))) <= tol

    frontier = []
    for b in gens:
        w = _canonical(b, tol)
        if not known(w):
            store[count] = w
            count += 1
            frontier.append(w)
    while frontier:
        fresh = []
        for v in frontier:
            for b in gens:
                w = _canonical(fl.sigma(b, v), tol)
                w = w / np.linalg.norm(w)
                if known(w):
                    continue
                if count == cap:
                    logger.info('reflection closure exceeded %d mirrors', cap)
                    return GroupClosure(False, None, count + 1, cap)
                store[count] = w
                count += 1
                fresh.append(w)
        frontier = fresh
    logger.debug('reflection closure is finite with %d mirrors', count)
    return GroupClosure(True, store[:count].copy(), count, cap)


def coxeter_orders(B: ReflectionFamily, config=None):
    """
    Orders m_ij of the rotations sigma_i sigma_j, None when irrational.
    """
    config = config or fl.get_config()
    normals = B.normals()
    orders = {}
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            c = float(np.clip(normals[i] @ normals[j], -1.0, 1.0))
            pq = fl.detect_rational(math.acos(c) / math.pi, config.qmax, config.eps)
            orders[(i, j)] = None if pq is None else pq[1]
    return orders


def decide_slice_family(B: ReflectionFamily, cap=None, config=None) -> InjectivityVerdict:
    """
    A family of parallel slice transforms fails injectivity exactly when its
    reflections generate a finite group; the witness is the product of the
    linear forms of all mirrors.
    """
    config = config or fl.get_config()
    closure = reflection_group_finite(B, cap, config)
    notes = ['%d mirrors (cap %d)' % (closure.count, closure.cap)]
    if not closure.finite:
        return InjectivityVerdict(INJECTIVE, 'reflection group is infinite (mirror closure exceeded the cap)',
                                  notes=notes)
    witness = LinearProduct(closure.mirrors)
    rotation = None
    if len(B) == 1:
        period = 2
    else:
        orders = coxeter_orders(B, config)
        period = reduce(lambda x, y: x * y // math.gcd(x, y), [q for q in orders.values() if q], 1)
        if len(B) == 2:
            rotation = fl.classify_theta(fl.theta_of_directions(*B.normals()), config=config).rational
    return InjectivityVerdict(NON_INJECTIVE, 'reflection group is finite', period=max(period, 2),
                              rotation=rotation, witness=witness, notes=notes)
