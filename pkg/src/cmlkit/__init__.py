"""Contraction-sequence tools for the reduced component max-leaf parameter."""

from .contraction import (
    ContractionSequence,
    OrderedGraph,
    SequenceLevels,
    WitnessReport,
    quotient,
    replay,
    restrict_sequence,
    star_sequence,
    stretch,
    verify_witness,
)
from .graph import (
    ConnSubgraphHandle,
    Graph,
    Partition,
    Trigraph,
    component_max_leaf,
    enumerate_connected_red_subgraphs,
    max_leaf,
    neighborhood_of_set,
    red_graph,
)
from .idp import IdpInstance, enumerate_idp_separators, merge_pairings, solve_idp
from .oracles import oracle_idp, oracle_max_leaf, oracle_sigma
from .separator import balanced_separator, dominated_separator
from .sigma import SigmaSpec, enumerate_sigma_separators, solve_sigma

__version__ = "0.1.0"
