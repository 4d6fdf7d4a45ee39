__all__ = []

from . import base
__all__.extend( base.__all__ )
from .base import *

from . import primitives
__all__.extend( primitives.__all__ )
from .primitives import *

from . import grammar
__all__.extend( grammar.__all__ )
from .grammar import *
