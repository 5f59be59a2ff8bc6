from . import graph_utils
from . import cycle_utils
from . import proof_utils
from . import gen_utils
from . import api
from . import heuristics
from . import conjecture_utils
from ._constants import VERSION as __version__
