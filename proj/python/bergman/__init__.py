"""Bergman polynomial content of simple polygons."""

from ._bergman import (
    BergmanError,
    Polygon,
    complex_moment,
    critical_points,
    make_equilateral_pentagon,
    make_family,
    make_regular_ngon,
    make_triangle_fixed_angle,
    make_triangle_fixed_base,
    make_windmill,
    oracle_rho_n,
    pentagon_grid,
    read_polygon,
    rho1_closed,
    rho2_closed,
    rho_n,
    sweep_fixed_angle,
    sweep_fixed_base,
    t_star,
    verify,
    windmill_rho_closed,
)

__all__ = [
    "BergmanError",
    "Polygon",
    "complex_moment",
    "critical_points",
    "make_equilateral_pentagon",
    "make_family",
    "make_regular_ngon",
    "make_triangle_fixed_angle",
    "make_triangle_fixed_base",
    "make_windmill",
    "oracle_rho_n",
    "pentagon_grid",
    "read_polygon",
    "rho1_closed",
    "rho2_closed",
    "rho_n",
    "sweep_fixed_angle",
    "sweep_fixed_base",
    "t_star",
    "verify",
    "windmill_rho_closed",
]
