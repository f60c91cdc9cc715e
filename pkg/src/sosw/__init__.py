"""sosw: a workbench for small-step operational semantics.

Define a language by implementing a ``next`` step relation, then explore
bounded transition systems, compare behaviours up to branching bisimulation
or trace equivalence, compose networks of local semantics, and render
everything as text, code, or Mermaid diagrams. Three example languages are
bundled (an imperative while-language, a lambda calculus with integers, and
a choreography language) and exposed through a CLI and a JSON HTTP service.
"""

from .core import (
    EvalError,
    ExploreLimits,
    Lts,
    MappingSemantics,
    ParseError,
    SosSemantics,
    explore,
    is_accepting,
    successors,
    traces,
)
from .equivalence import (
    Bisimilar,
    Bound,
    NotBisimilar,
    PlayMove,
    SilentSpec,
    TracesDiffer,
    TracesEqual,
    compare_branching_bisim,
    compare_traces,
    verify_bisimulation,
)
from .network import (
    FORBIDDEN,
    FifoBuffers,
    NetworkSemantics,
    NetworkState,
    interleaving_sync,
    network_sos,
    single_label_relabel,
)
from .render import (
    Tree,
    View,
    ast_to_dot,
    ast_to_mermaid,
    lts_to_dot,
    lts_to_mermaid,
    verdict_to_view,
)

__version__ = "0.1.0"

__all__ = [
    "SosSemantics", "MappingSemantics", "ExploreLimits", "Lts",
    "explore", "traces", "successors", "is_accepting",
    "EvalError", "ParseError",
    "SilentSpec", "Bisimilar", "NotBisimilar", "Bound", "PlayMove",
    "TracesEqual", "TracesDiffer",
    "compare_branching_bisim", "compare_traces", "verify_bisimulation",
    "FORBIDDEN", "NetworkState", "NetworkSemantics", "FifoBuffers",
    "network_sos", "interleaving_sync", "single_label_relabel",
    "Tree", "View", "ast_to_mermaid", "lts_to_mermaid",
    "ast_to_dot", "lts_to_dot", "verdict_to_view",
    "__version__",
]
