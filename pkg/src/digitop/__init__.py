"""Finite digital images, normal product adjacencies and decision procedures
for continuity, homotopy, multivalued maps and related properties."""

from .lattice import CU, NP, DigitalImage, Explicit, adjacent, image, interval, product_image
from .connectivity import components, find_path, is_connected, neighborhood
from .maps import DigitalMap, compose, identity, is_continuous, is_isomorphism, product_map
from .homotopy import Homotopy, are_homotopic, is_contractible, is_homotopy
from .multimap import MultiMap, is_connectivity_preserving, is_continuous_multimap, subdivide
from .analysis import has_afpp, has_bu_property, is_covering_map, is_shy
from .search import BudgetExceeded

__version__ = "0.1.0"

__all__ = [
    "CU", "NP", "Explicit", "DigitalImage", "adjacent", "image", "interval", "product_image",
    "components", "find_path", "is_connected", "neighborhood",
    "DigitalMap", "compose", "identity", "is_continuous", "is_isomorphism", "product_map",
    "Homotopy", "are_homotopic", "is_contractible", "is_homotopy",
    "MultiMap", "is_connectivity_preserving", "is_continuous_multimap", "subdivide",
    "has_afpp", "has_bu_property", "is_covering_map", "is_shy", "BudgetExceeded",
]
