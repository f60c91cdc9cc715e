from .semantics import (
    GLOBAL,
    GlobalSemantics,
    LocalSemantics,
    buffered_sync,
    compose,
    global_next,
    handshake_relabel,
    handshake_sync,
    local_next,
    realisability,
)
from .syntax import (
    END,
    Choice,
    Choreo,
    End,
    GlobalLabel,
    Interaction,
    LocalLabel,
    LocalProc,
    Par,
    Recv,
    Send,
    Seq,
    agents,
    normalize,
    parse_choreo,
    pretty,
    project,
    terminable,
    to_tree,
)

__all__ = [
    "Interaction", "Send", "Recv", "Seq", "Par", "Choice", "End", "END",
    "Choreo", "LocalProc", "GlobalLabel", "LocalLabel",
    "parse_choreo", "pretty", "to_tree",
    "terminable", "normalize", "agents", "project",
    "GlobalSemantics", "GLOBAL", "LocalSemantics",
    "global_next", "local_next",
    "handshake_sync", "handshake_relabel", "buffered_sync",
    "compose", "realisability",
]
