"""Output-sensitive listing of simple st-paths and cycles in undirected graphs."""

from .baselines import SizeLimitError, brute_force_cycles, brute_force_st_paths, johnson_cycles
from .blocks import BeadString, BlockTree, NotConnectedError, bead_string, biconnected_components, induced_bead_subgraph
from .certificate import Certificate, CertEdge, CompactedHead, UndoLog, build_certificate
from .enumerator import RunStats, StopEnumeration, audit_costs, canonical_cycle, list_cycles, list_st_paths
from .generators import diamond, random_graph, tripartite
from .graph import Graph, GraphFormatError, connected_components, parse_edge_list, serialize_edge_list

__version__ = "0.1.0"
