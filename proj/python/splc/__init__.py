from ._splc import *  # noqa: F401,F403
from ._splc import __doc__  # noqa: F401
