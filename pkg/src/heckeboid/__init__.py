"""Bipartite q-boid graphs, tree diagrams and permutation pairs for the Hecke groups H_q."""

from .enumeration import all_classes
from .errors import HeckeError, ValidationError
from .geometry import develop_tree, hecke_generators
from .model import HeckeSignature, QBoidGraph, TreeDiagram, validate_graph, validate_tree
from .perms import PermutationPair, are_isomorphic, canonical_form, make_pair, orbifold_invariants
from .treeops import enumerate_cut_sets, graph_to_tree, tree_to_graph

__version__ = "0.1.0"
