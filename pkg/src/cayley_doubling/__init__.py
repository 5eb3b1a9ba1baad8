"""Doubling construction Cay(R, c, s1, s2, s3, s4) over finite-field towers and
rational quaternion algebras, with structure probes and brute-force oracles."""

__version__ = "0.1.0"

from .gf_tower import AutMap, FieldTower, FqElem, make_tower
from .quaternions import HAMILTON, InnerAut, QuatAlgebra, Quaternion
from .rings import GFRing, QuatRing
from .doubling import DoubledElem, DoublingParams, gf_algebra, quat_algebra, load_algebra
from .structure import StructureReport, probe

__all__ = [
    "AutMap", "FieldTower", "FqElem", "make_tower",
    "HAMILTON", "InnerAut", "QuatAlgebra", "Quaternion",
    "GFRing", "QuatRing",
    "DoubledElem", "DoublingParams", "gf_algebra", "quat_algebra", "load_algebra",
    "StructureReport", "probe",
]
