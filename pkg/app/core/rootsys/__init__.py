"""有限型根系组合：根、ρ、Weyl 群、点作用、强连接、Kostant 分拆"""

from .cartan import NAMED_CARTAN, CartanMatrix, parse_cartan
from .linkage import LinkageChain, dot_orbit, downward_neighbours, strongly_linked
from .partitions import enumerate_partitions, kostant_partition
from .root_system import Root, RootSystem, build_root_system
from .weights import Weight
from .weyl import WeylElement, dot_action, linear_action

__all__ = [
    "CartanMatrix",
    "LinkageChain",
    "NAMED_CARTAN",
    "Root",
    "RootSystem",
    "Weight",
    "WeylElement",
    "build_root_system",
    "dot_action",
    "dot_orbit",
    "downward_neighbours",
    "enumerate_partitions",
    "kostant_partition",
    "linear_action",
    "parse_cartan",
    "strongly_linked",
]
