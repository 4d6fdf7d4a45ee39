import numpy as np


def random_ball_point(rng, n, rmax=0.9):
    u = rng.standard_normal(n)
    return u / np.linalg.norm(u) * rmax * rng.random() ** (1.0 / n)


def random_exterior_point(rng, n, rmin=1.2, rmax=3.0):
    u = rng.standard_normal(n)
    return u / np.linalg.norm(u) * rng.uniform(rmin, rmax)


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def pair_with_theta(theta):
    """
    Exterior centers a=(2,0,0), b=2(cos g, sin g, 0) with Theta(a, b) = theta.
    """
    c = (3.0 * theta + 1.0) / 4.0
    s = np.sqrt(1.0 - c * c)
    return np.array([2.0, 0.0, 0.0]), np.array([2.0 * c, 2.0 * s, 0.0])
