import math

import numpy as np
import pytest

import funklab as fl
from funklab.errors import CoincidentCenters, CoincidentDirections, InvalidFamily
from tests.utils import random_ball_point, random_exterior_point, random_orthogonal


INVERSE_PAIR = (np.array([0.5, 0.0, 0.0]), np.array([2.0, 0.0, 0.0]))
PERIOD3 = (np.array([2.0, 0.0]), np.array([0.0, math.sqrt(7.0 / 3.0)]))
DIHEDRAL = [[1.0, 0.0], [math.cos(math.pi / 4), math.sin(math.pi / 4)]]
ONE_RADIAN = [[1.0, 0.0], [math.cos(1.0), math.sin(1.0)]]


#
# Pairs of finite centers
#

def test_decide_pair_examples():
    v = fl.decide_pair(*INVERSE_PAIR)
    assert v.verdict == fl.NON_INJECTIVE
    assert v.period == 2 and v.rotation == (1, 2)

    v = fl.decide_pair([0.3, 0.0, 0.0], [5.0, 1.0, 0.0])
    assert v.verdict == fl.INJECTIVE
    assert v.mobius.kind == 'loxodromic'

    v = fl.decide_pair(*PERIOD3)
    assert v.verdict == fl.NON_INJECTIVE
    assert v.period == 3 and v.rotation == (2, 3)


def test_decide_pair_irrational_and_hyperbolic():
    v = fl.decide_pair([2.0, 0.0, 0.0], [0.0, 2.0, 0.0])
    assert v.verdict == fl.INJECTIVE
    assert 'no rational rotation' in v.reason
    assert fl.decide_pair([1.5, 0.0, 0.0], [3.0, 0.0, 0.0]).mobius.kind == 'hyperbolic'


def test_decide_pair_coincident():
    with pytest.raises(CoincidentCenters):
        fl.decide_pair([2.0, 0.0], [2.0, 0.0])


def test_verdict_schema():
    d = fl.decide_pair(*INVERSE_PAIR).to_dict()
    for key in ('verdict', 'class', 'theta', 'kappa', 'rational', 'period', 'discriminant', 'notes'):
        assert key in d
    assert d['rational'] == [1, 2]
    assert d['class'] == 'elliptic'


def test_discriminant_examples():
    assert fl.discriminant([0.3, 0.0], [2.0, 0.0]) == pytest.approx(2.89)
    assert fl.discriminant([1.0, 1.0], [1.0, -1.0]) == pytest.approx(0.0, abs=1e-15)
    assert fl.discriminant([2.0, 0.0], [0.0, 2.0]) == pytest.approx(-8.0)


def test_decide_pair_is_symmetric_and_equivariant(rng):
    pairs = [INVERSE_PAIR,
             (np.array([2.0, 0.0, 0.0]), np.array([0.0, math.sqrt(7.0 / 3.0), 0.0])),
             (np.array([2.0, 0.0, 0.0]), np.array([0.0, 2.0, 0.0])),
             (np.array([0.3, 0.1, 0.0]), np.array([1.5, -2.0, 0.5]))]
    for a, b in pairs:
        ref = fl.decide_pair(a, b)
        assert fl.decide_pair(b, a).verdict == ref.verdict
        for _ in range(5):
            R = random_orthogonal(rng, 3)
            v = fl.decide_pair(R @ a, R @ b)
            assert v.verdict == ref.verdict
            assert v.period == ref.period


def test_inverse_pairs_are_periodic(rng):
    for _ in range(100):
        a = random_ball_point(rng, 3, 0.9)
        if np.linalg.norm(a) < 0.1:
            continue
        v = fl.decide_pair(a, a / (a @ a))
        assert v.verdict == fl.NON_INJECTIVE and v.period == 2


def test_interior_center_forces_injectivity(rng):
    for _ in range(100):
        a = random_ball_point(rng, 3, 0.95)
        b = random_ball_point(rng, 3, 0.95) if rng.random() < 0.5 else random_exterior_point(rng, 3, 1.05, 5.0)
        if abs(a @ b - 1.0) < 1e-6:
            continue
        assert fl.decide_pair(a, b).verdict == fl.INJECTIVE


def test_discriminant_matches_fixed_points_and_class(rng):
    checked = 0
    while checked < 500:
        a = rng.uniform(-3.0, 3.0, size=3)
        b = rng.uniform(-3.0, 3.0, size=3)
        if min(abs(np.linalg.norm(a) - 1.0), abs(np.linalg.norm(b) - 1.0)) < 0.05:
            continue
        disc = fl.discriminant(a, b)
        if abs(disc) < 1e-4 or abs(a @ b - 1.0) < 1e-6:
            continue
        meets = len(fl.fixed_points(a, b).line_points) > 0
        assert meets == (disc > 0.0)
        assert (fl.classify(a, b).kind == 'elliptic') == (disc < 0.0)
        checked += 1


#
# Centers at infinity
#

def test_decide_finite_infinite_examples():
    v = fl.decide_finite_infinite([2.0, 0.0], [0.0, 1.0])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2
    assert fl.decide_finite_infinite([0.5, 0.0], [1.0, 0.0]).verdict == fl.INJECTIVE
    assert fl.decide_finite_infinite([0.5, 0.0], [1.0, 1.0]).verdict == fl.INJECTIVE
    assert fl.decide_finite_infinite([2.0, 0.0], [1.0, 0.0]).verdict == fl.INJECTIVE


def test_decide_finite_infinite_direction_scale_invariant():
    v = fl.decide_finite_infinite([2.0, 0.0], [0.0, 7.0])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2


def test_interior_center_on_the_mirror_commutes():
    # the reflection and tau_a commute when a lies on the mirror
    v = fl.decide_finite_infinite([0.5, 0.0], [0.0, 1.0])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2


def test_center_at_the_origin_shares_an_odd_kernel_with_the_mirror(rng):
    # x3 is odd under the antipodal map and under the reflection in e3
    v = fl.decide_finite_infinite([0.0, 0.0, 0.0], [0.0, 0.0, 1.0])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2
    f = fl.Monomial([0, 0, 1])
    for _ in range(20):
        E = fl.random_plane_through(np.zeros(3), 2, rng)
        assert abs(fl.funk(np.zeros(3), f, E)) <= 1e-12
        P = fl.random_parallel_plane([0.0, 0.0, 1.0], 2, rng)
        assert abs(fl.slice_transform([0.0, 0.0, 1.0], f, P)) <= 1e-12


def test_decide_infinite_pair_examples():
    v = fl.decide_infinite_pair([1.0, 0.0], [0.0, 1.0])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2
    assert fl.decide_infinite_pair([1.0, 0.0], [math.cos(1.0), math.sin(1.0)]).verdict == fl.INJECTIVE
    v = fl.decide_infinite_pair([1.0, 0.0], [math.cos(math.pi / 3), math.sin(math.pi / 3)])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 3
    with pytest.raises(CoincidentDirections):
        fl.decide_infinite_pair([1.0, 0.0], [-2.0, 0.0])


#
# Families
#

def test_decide_multi():
    v = fl.decide_multi([[0.3, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 3.0, 0.0]])
    assert v.verdict == fl.INJECTIVE
    assert len(v.pairs) == 3

    v = fl.decide_multi([[0.5, 0.0], [2.0, 0.0]])
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2

    with pytest.raises(InvalidFamily):
        fl.decide_multi([[2.0, 0.0]])


def test_decide_multi_all_periodic_is_indeterminate():
    # Theta = 0 for every pair
    centers = [[2.0, 0.0, 0.0], [0.5, 2.0, 0.0], fl.make_infinite_center([0.0, 0.0, 1.0])]
    v = fl.decide_multi(centers)
    assert all(p['verdict'] == fl.NON_INJECTIVE for p in v.pairs)
    assert v.verdict == fl.INDETERMINATE
    assert 'open question' in v.reason


def test_decide_multi_slice_family_dispatch():
    centers = [fl.make_infinite_center(b) for b in DIHEDRAL]
    centers.append(fl.make_infinite_center([0.0, 1.0]))
    v = fl.decide_multi(centers)
    assert v.verdict == fl.NON_INJECTIVE
    assert v.period == 4


def test_reflection_family_validation():
    with pytest.raises(InvalidFamily):
        fl.ReflectionFamily([])
    with pytest.raises(CoincidentDirections):
        fl.ReflectionFamily([[1.0, 0.0], [-3.0, 0.0]])


def test_reflection_group_closure():
    closure = fl.reflection_group_finite(fl.ReflectionFamily([[1.0, 0.0]]))
    assert closure.finite and closure.count == 1

    closure = fl.reflection_group_finite(fl.ReflectionFamily(DIHEDRAL))
    assert closure.finite and closure.count == 4

    closure = fl.reflection_group_finite(fl.ReflectionFamily([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    assert closure.finite and closure.count == 3

    closure = fl.reflection_group_finite(fl.ReflectionFamily(ONE_RADIAN), cap=500)
    assert not closure.finite
    assert closure.to_dict()['cap'] == 500


def test_coxeter_orders():
    orders = fl.coxeter_orders(fl.ReflectionFamily(DIHEDRAL))
    assert orders == {(0, 1): 4}
    assert fl.coxeter_orders(fl.ReflectionFamily(ONE_RADIAN)) == {(0, 1): None}


def test_decide_slice_family_single_normal(rng):
    v = fl.decide_slice_family(fl.ReflectionFamily([[0.0, 0.0, 1.0]]))
    assert v.verdict == fl.NON_INJECTIVE and v.period == 2
    x = fl.random_sphere_points(3, 10, rng)
    np.testing.assert_allclose(np.abs(v.witness(x)), np.abs(x[:, 2]))
    for _ in range(20):
        E = fl.random_parallel_plane([0.0, 0.0, 1.0], 2, rng)
        assert abs(fl.slice_transform([0.0, 0.0, 1.0], v.witness, E)) <= 1e-10


def test_decide_slice_family_dihedral_witness(rng):
    v = fl.decide_slice_family(fl.ReflectionFamily(DIHEDRAL))
    assert v.verdict == fl.NON_INJECTIVE
    assert v.period == 4 and v.rotation == (1, 4)
    assert len(v.witness.normals()) == 4
    for b in DIHEDRAL:
        for _ in range(100):
            E = fl.random_parallel_plane(b, 1, rng)
            assert abs(fl.slice_transform(b, v.witness, E)) <= 1e-8


def test_decide_slice_family_one_radian_is_injective():
    v = fl.decide_slice_family(fl.ReflectionFamily(ONE_RADIAN))
    assert v.verdict == fl.INJECTIVE
    assert v.witness is None
    assert 'cap 10000' in v.notes[0]
