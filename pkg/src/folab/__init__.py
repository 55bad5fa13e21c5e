"""Colored forests, the W construction and swiss-cheese configurations."""

from .colored import ColoredMap, ColoredSet, ColorSet
from .forests import Forest, YoungForest, classify_edges, compose, compose_all, validate_forest
from .operads import FreeOperad, PointedCollection, TerminalOperad, get_operad
from .swiss_cheese import DiscDatum, SCElement, SwissCheese, compose_sc, validate_sc
from .wconstruction import WPoint, counit, point, reduce, w_act, w_equal, w_infty, w_sigma

__all__ = [
    "ColorSet",
    "ColoredMap",
    "ColoredSet",
    "DiscDatum",
    "Forest",
    "FreeOperad",
    "PointedCollection",
    "SCElement",
    "SwissCheese",
    "TerminalOperad",
    "WPoint",
    "YoungForest",
    "classify_edges",
    "compose",
    "compose_all",
    "compose_sc",
    "counit",
    "get_operad",
    "point",
    "reduce",
    "validate_forest",
    "validate_sc",
    "w_act",
    "w_equal",
    "w_infty",
    "w_sigma",
]
