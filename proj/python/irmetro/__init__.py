"""Python bindings for the irmetro IR merge/simplify pipeline."""

import json

from ._core import (
    Hypergraph,
    IRGraph,
    IrMetroError,
    SubIR,
    __version__,
    construct_hypergraph,
    generate_corpus,
    load_corpus,
    merge_equivalent_nodes,
    merge_into_original,
    parse_dump,
    read_dump,
    reduce_hyperedges,
    remove_dead_nodes,
    score_hyperedges,
    select_candidates,
    simplify_hyperedges,
)
from ._core import analyze_json as _analyze_json


def analyze(manifest, exclude=None, single_pass=False, top_k=3):
    """Run the full pipeline and return the metro-map export as a dict."""
    return json.loads(_analyze_json(manifest, exclude, single_pass, top_k))


__all__ = [
    "Hypergraph",
    "IRGraph",
    "IrMetroError",
    "SubIR",
    "__version__",
    "analyze",
    "construct_hypergraph",
    "generate_corpus",
    "load_corpus",
    "merge_equivalent_nodes",
    "merge_into_original",
    "parse_dump",
    "read_dump",
    "reduce_hyperedges",
    "remove_dead_nodes",
    "score_hyperedges",
    "select_candidates",
    "simplify_hyperedges",
]
