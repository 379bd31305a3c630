"""Strict ω-categories through Steiner's augmented directed complexes.

Submodules: ``adc`` (complexes, morphisms, dualities), ``omega`` (cells and
their compositions), ``gray`` (tensor, cone, suspension, wedges), ``theta``
(globular sums and their morphisms), ``twodim`` (decomposition of 2-cells),
``colim`` (pushouts, pullbacks, zigzag colimits, isomorphisms), ``checks``
(the verification battery) and ``cli``.
"""
from .adc import (ADCMorphism, BasedADC, Chain, Duality, SteinerArray, Verdict, dual,
                  is_loopfree, is_quasirigid, is_strong_steiner, is_unitary)
from .errors import OmegacError
from .omega import Cell, atom_cell, boundary, compose_cells, enumerate_cells, unit_cell
from .theta import GlobularSum, enumerate_hom, lambda_gs, parse_gs

__all__ = [
    "ADCMorphism", "BasedADC", "Cell", "Chain", "Duality", "GlobularSum", "OmegacError",
    "SteinerArray", "Verdict", "atom_cell", "boundary", "compose_cells", "dual", "enumerate_cells",
    "enumerate_hom", "is_loopfree", "is_quasirigid", "is_strong_steiner", "is_unitary", "lambda_gs",
    "parse_gs", "unit_cell",
]
__version__ = "0.1.0"
