"""Exact multi-robot coverage of trees: dynamic programs, oracles and hardness gadgets."""

from .dp import DestinationPathTable, DpSolution, OneSourceTable, TwoSourcesTable, destination_path, one_source, two_sources
from .errors import InvalidInput, ParseError, PreconditionViolation, ResourceLimitExceeded, TreeCoverError
from .hardness import gen_lcsr, gen_random_tree, gen_tcs, witness_lcsr, witness_tcs
from .oracle import oracle_length, oracle_paths_mlcp, oracle_time, three_partition_solve
from .structure import (
    check_edge_directions,
    cost_of_paths,
    decompose_walk,
    strategy_from_paths,
    verify_structure,
)
from .tree import (
    Strategy,
    Tree,
    is_covering,
    rendezvous_ok,
    split_along_path,
    strategy_length,
    strategy_time,
    tree_path,
    walk_length,
    walk_time,
)

__version__ = "0.1.0"
