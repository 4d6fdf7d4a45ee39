__all__ = ['FunkLabError',
           'OnSphere',
           'NotInterior',
           'NotExterior',
           'DegenerateDenominator',
           'ZeroVector',
           'DimensionMismatch',
           'RankDeficient',
           'Disjoint',
           'CoincidentPoint',
           'CoincidentCenters',
           'CoincidentDirections',
           'InvalidFamily',
           'SingularPoint',
           'DegenerateSection',
           'CenterNotOnPlane',
           'NotParallel',
           'ParseError',
           'UsageError',
           'Conflict',
           'SearchFailed']

import re


def _snake(name):
    return re.sub(r'(?<!^)(?=[A-Z])', '_', name).lower()


class FunkLabError(Exception):
    """
    Base class of every error raised by funklab.

    Each subclass exposes a stable ``code`` (the snake_case class name)
    that the command line front-end reports in its error documents.
    """

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = _snake(cls.__name__)

    def to_dict(self):
        return {'error': self.code, 'message': str(self)}

FunkLabError.code = 'funk_lab_error'


#
# Input and geometry errors
#

class OnSphere(FunkLabError, ValueError):
    pass

class NotInterior(FunkLabError, ValueError):
    pass

class NotExterior(FunkLabError, ValueError):
    pass

class DegenerateDenominator(FunkLabError, ValueError):
    pass

class ZeroVector(FunkLabError, ValueError):
    pass

class DimensionMismatch(FunkLabError, ValueError):
    pass

class RankDeficient(FunkLabError, ValueError):
    pass

class Disjoint(FunkLabError, ValueError):
    pass

class CoincidentPoint(FunkLabError, ValueError):
    pass

class CoincidentCenters(FunkLabError, ValueError):
    pass

class CoincidentDirections(FunkLabError, ValueError):
    pass

class InvalidFamily(FunkLabError, ValueError):
    pass

class SingularPoint(FunkLabError, ValueError):
    pass

class DegenerateSection(FunkLabError, ValueError):
    pass

class CenterNotOnPlane(FunkLabError, ValueError):
    pass

class NotParallel(FunkLabError, ValueError):
    pass

class ParseError(FunkLabError, ValueError):
    pass

class UsageError(FunkLabError, ValueError):
    pass


#
# Numerical outcomes
#

class Conflict(FunkLabError, ArithmeticError):
    """
    The analytic and the numeric stage of the period detector disagree.

    Parameters
    ----------
    analytic_q : int
        Period predicted by the rotation number.
    numeric_residual : float
        Largest displacement observed after ``analytic_q`` iterations.
    """

    def __init__(self, analytic_q, numeric_residual):
        self.analytic_q = int(analytic_q)
        self.numeric_residual = float(numeric_residual)
        super().__init__('rotation number predicts period %d but the iteration residual is %.3e'
                         % (self.analytic_q, self.numeric_residual))

    def to_dict(self):
        d = super().to_dict()
        d.update({'analytic_q': self.analytic_q, 'numeric_residual': self.numeric_residual})
        return d


class SearchFailed(FunkLabError, RuntimeError):
    pass
