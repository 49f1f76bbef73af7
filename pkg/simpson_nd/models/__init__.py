from simpson_nd.models.polynomial import MonomialPoly
from simpson_nd.models.region import Cube, Polygon, Region, Simplex, UnitDisc, region_from_alias
from simpson_nd.models.report import ExactnessReport, Infeasible, SystemResiduals, Underdetermined, UniqueSolution
from simpson_nd.models.rule import CubatureRule, blend, midpoint_rule, named_rule, vertex_rule

__all__ = [
    "MonomialPoly",
    "Region",
    "Simplex",
    "Cube",
    "Polygon",
    "UnitDisc",
    "region_from_alias",
    "ExactnessReport",
    "UniqueSolution",
    "Infeasible",
    "Underdetermined",
    "SystemResiduals",
    "CubatureRule",
    "blend",
    "midpoint_rule",
    "vertex_rule",
    "named_rule",
]
