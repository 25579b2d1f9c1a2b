"""k-edge-colourings of complete bipartite graphs and monochromatic connected matchings."""

from .colouring import Colouring, ParseError, Side, VertexRef, emit_colouring, parse_colouring
from .matching import (
    Component,
    CoverCertificate,
    components,
    connected_matching_number,
    max_matching,
    mono_cm_free,
)

__all__ = [
    "Colouring",
    "Component",
    "CoverCertificate",
    "ParseError",
    "Side",
    "VertexRef",
    "components",
    "connected_matching_number",
    "emit_colouring",
    "max_matching",
    "mono_cm_free",
    "parse_colouring",
]
