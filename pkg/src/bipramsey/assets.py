"""Shipped, verified colourings (search-found bases)."""

from __future__ import annotations

from importlib import resources

from .colouring import Colouring, parse_colouring

FIGURE1_BASE = "figure1_base.bicol"
STAR_K4_5X5 = "star_k4_5x5.bicol"
STAR_K5_6X6 = "star_k5_6x6.bicol"


def asset_text(name: str) -> str:
    return resources.files("bipramsey").joinpath("assets", name).read_text(encoding="utf-8")


def load_asset(name: str) -> Colouring:
    return parse_colouring(asset_text(name))


def asset_names() -> list[str]:
    folder = resources.files("bipramsey").joinpath("assets")
    return sorted(p.name for p in folder.iterdir() if p.name.endswith(".bicol"))
