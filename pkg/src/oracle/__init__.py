"""Brute-force ground truth for small problems."""

from src.oracle.bessel import BesselQuadratureError, bessel_k_numeric
from src.oracle.covariance import (
    JointCovariance,
    build_joint_covariance,
    exact_generator_covariance,
    oracle_sample,
)

__all__ = [
    "BesselQuadratureError",
    "JointCovariance",
    "bessel_k_numeric",
    "build_joint_covariance",
    "exact_generator_covariance",
    "oracle_sample",
]
