__all__ = ['Tolerances', 'RunConfig', 'SEED_ENV']

import os
import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)

SEED_ENV = 'FUNKLAB_SEED'


@dataclass(frozen=True)
class Tolerances:
    sphere: float = 1e-12
    degeneracy: float = 1e-14
    verdict: float = 1e-9
    plane_membership: float = 1e-9
    period_residual: float = 1e-8
    orbit_return: float = 1e-10
    dedup: float = 1e-9


@dataclass(frozen=True)
class RunConfig:
    """
    Settings shared by every analysis of a run.

    Quadrature orders follow the rule families: ``circle_order`` nodes on a
    one dimensional section, ``product_order`` longitudes (and half as many
    colatitudes) on higher sections. Kernel witnesses are compactly supported
    bumps and are checked on k >= 2 sections with ``kernel_order`` nodes per
    circle.
    """
    tolerances: Tolerances = field(default_factory=Tolerances)
    qmax: int = 64
    eps: float = 1e-9
    circle_order: int = 64
    product_order: int = 48
    kernel_order: int = 2048
    period_samples: int = 32
    verify_planes: int = 200
    basepoint_delta: float = 0.05
    basepoint_trials: int = 100000
    basepoint_candidates: int = 256
    group_cap: int = 10000
    seed: int = 12345
    output_format: str = 'json'
    output: Optional[str] = None

    def __post_init__(self):
        if self.output_format not in ('json', 'csv'):
            raise ValueError('output format must be json or csv, got %r' % self.output_format)
        if self.qmax < 1:
            raise ValueError('qmax must be positive')
        if min(self.circle_order, self.product_order, self.kernel_order) < 2:
            raise ValueError('quadrature orders must be at least 2')

    @classmethod
    def from_env(cls, **kwargs):
        """
        Builds a configuration honouring the FUNKLAB_SEED environment variable.
        """
        seed = os.environ.get(SEED_ENV)
        if seed is not None and 'seed' not in kwargs:
            try:
                kwargs['seed'] = int(seed)
            except ValueError:
                logger.warning('ignoring non integer %s=%r', SEED_ENV, seed)
        return cls(**kwargs)

    def replace(self, **kwargs):
        if any(name in kwargs for name in [f.name for f in dataclasses.fields(Tolerances)]):
            tol = {k: kwargs.pop(k) for k in list(kwargs) if hasattr(self.tolerances, k)}
            kwargs['tolerances'] = dataclasses.replace(self.tolerances, **tol)
        return dataclasses.replace(self, **kwargs)

    def rng(self, stream=0):
        return np.random.default_rng([self.seed, stream])

    def to_dict(self):
        d = dataclasses.asdict(self)
        d.pop('output')
        return d
