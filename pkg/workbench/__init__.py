"""Finite inverse semigroups, their premorphisms, holomorphs and heap maps,
plus window checks for the bicyclic and polycyclic monoids."""
from workbench.core_semigroup import InverseSemigroup, build_example, build_from_table
from workbench.report import Report

__version__ = "0.1.0"

__all__ = ["InverseSemigroup", "Report", "build_example", "build_from_table", "__version__"]
