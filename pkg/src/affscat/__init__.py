"""Exact cluster scattering diagrams of acyclic affine type.

Construction and verification of the walls, scattering terms, consistency,
and the coincidence of the scattering fan with the almost-positive-roots fan
and mutation-fan classes, all in exact rational arithmetic at finite
truncation parameters.
"""

from .almost_positive import APContext
from .cartan import CartanMatrix, ExchangeMatrix, classify, exchange_to_cartan
from .coxeter import CoxeterContext, coxeter_context
from .mutation import b_class_probe, eta, fans_compare, mutate
from .scattering import (
    ScatDiagram,
    Wall,
    build_dcscat,
    build_easy_scat,
    check_consistency,
    classify_wall,
    rampart_set,
    rank2_complete,
    scat_cone_eq,
)
from .series import MonomialExpr, TruncatedSeries, f_inf_series, path_product, wall_cross
from .shards import ShardContext
from .sortable import SortableContext
from .weyl import WeylContext

__all__ = [
    "APContext",
    "CartanMatrix",
    "CoxeterContext",
    "ExchangeMatrix",
    "MonomialExpr",
    "ScatDiagram",
    "ShardContext",
    "SortableContext",
    "TruncatedSeries",
    "Wall",
    "WeylContext",
    "b_class_probe",
    "build_dcscat",
    "build_easy_scat",
    "check_consistency",
    "classify",
    "classify_wall",
    "coxeter_context",
    "eta",
    "exchange_to_cartan",
    "f_inf_series",
    "fans_compare",
    "mutate",
    "path_product",
    "rampart_set",
    "rank2_complete",
    "scat_cone_eq",
    "wall_cross",
]
