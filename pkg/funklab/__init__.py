
__all__ = ['set_config', 'get_config', 'reset_config']

from . import errors
__all__.extend( errors.__all__ )
from .errors import *

from . import config
__all__.extend( config.__all__ )
from .config import *

global __config
__config = RunConfig.from_env()

def set_config(config: RunConfig):
    """
    Sets the current run configuration

    Parameters
    ----------
    config : RunConfig
        Settings used by every function called without an explicit config.
    """
    global __config
    if not isinstance(config, RunConfig):
        raise TypeError('expected a RunConfig, got %s' % type(config).__name__)
    __config = config

def get_config() -> RunConfig:
    """
    Returns the current run configuration

    Returns
    -------
    RunConfig
        Current settings
    """
    global __config
    return __config

def reset_config():
    """
    Restores the default configuration (honouring FUNKLAB_SEED)
    """
    set_config(RunConfig.from_env())

from . import geometry
__all__.extend( geometry.__all__ )
from .geometry import *

from . import functions
__all__.extend( functions.__all__ )
from .functions import *

from . import dynamics
__all__.extend( dynamics.__all__ )
from .dynamics import *

from . import transform
__all__.extend( transform.__all__ )
from .transform import *

from . import analyzer
__all__.extend( analyzer.__all__ )
from .analyzer import *

from . import kernelgen
__all__.extend( kernelgen.__all__ )
from .kernelgen import *

from . import report
__all__.extend( report.__all__ )
from .report import *

from . import cli
