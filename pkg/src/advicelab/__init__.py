"""Election and selection with advice in the LOCAL model."""
from .graph import (
    GraphError,
    InstanceError,
    LabeledGraph,
    View,
    ball_view,
    build_ring,
    diameter,
    label_set,
    parse_instance,
    serialize_instance,
    views_equal,
)
from .kernels import BACKEND
from .sim import Algorithm, Oracle, RunReport, Wait, check_election, check_selection, run

__version__ = "0.1.0"
