"""Two-strand graph braid groups via discrete Morse theory, and the Borsuk-Ulam
property for homotopy classes of maps from a graph with a free involution into a graph."""

from .braid import Braids
from .bu_engine import Decision, WitnessDiagram, build_key_elements, construct_witness, decide
from .config_complex import Cell, build_ordered, build_unordered
from .graph_model import Graph, GraphError, OrderedGraph, order_graph, parse_graph
from .involution import InvolutionGraph, adapt_basis, quotient
from .morse import build_field, build_trees, normalize_loop
from .words import Word, format_word, parse_word

__all__ = [
    "Braids", "Cell", "Decision", "Graph", "GraphError", "InvolutionGraph", "OrderedGraph",
    "WitnessDiagram", "Word", "adapt_basis", "build_field", "build_key_elements", "build_ordered",
    "build_trees", "build_unordered", "construct_witness", "decide", "format_word", "normalize_loop",
    "order_graph", "parse_graph", "parse_word", "quotient",
]
