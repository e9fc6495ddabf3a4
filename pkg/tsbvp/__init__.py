# flake8: noqa
from .conditions import *
from .expr import *
from .ops import *
from .oracle import *
from .solvers import *
from .timescale import *
from .utils import *
from .version import __version__
