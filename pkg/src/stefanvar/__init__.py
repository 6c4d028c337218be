"""Exact similarity solutions of one-phase melting problems whose
conductivity and heat capacity follow k0, c0 (1 + delta u**p)."""

from .asymptotics import ConvergenceReport, converge_study
from .dirichlet import DirichletSolution, Profile, solve_lambda
from .model import Boundary, DimensionlessConfig, MaterialSpec, reduce
from .oracle import ShootingResult, shoot
from .robin import RobinSolution, solve_lambda_gamma
from .rootfind import RootConfig, RootResult

__version__ = "0.1.0"

__all__ = [
    "Boundary",
    "ConvergenceReport",
    "DimensionlessConfig",
    "DirichletSolution",
    "MaterialSpec",
    "Profile",
    "RobinSolution",
    "RootConfig",
    "RootResult",
    "ShootingResult",
    "converge_study",
    "reduce",
    "shoot",
    "solve_lambda",
    "solve_lambda_gamma",
]
