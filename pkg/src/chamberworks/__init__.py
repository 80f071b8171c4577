"""Exact spherical Coxeter complexes, convex subcomplexes and center verdicts."""
from __future__ import annotations

from .center import COUNTEREXAMPLE, FIXED_FACE, SUBBUILDING, Verdict, verdict
from .complex import CoxeterComplex, build_complex
from .convexity import Subcomplex, is_convex, is_subbuilding, simplicial_convex_hull
from .coxeter import build_root_system
from .facts import run_facts
from .kernels import BACKEND
from .linalg import ExactAngle

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "COUNTEREXAMPLE", "FIXED_FACE", "SUBBUILDING", "CoxeterComplex", "ExactAngle",
    "Subcomplex", "Verdict", "build_complex", "build_root_system", "is_convex", "is_subbuilding",
    "run_facts", "simplicial_convex_hull", "verdict",
]
