"""Entanglement localization of a noisy three-qubit GHZ state."""

__version__ = "0.1.0"

from .channels import DecoherenceParams, KrausChannel, amplitude_damping, apply_local, depolarizing
from .qmat import DensityMatrix, PureState
from .states import MeasurementBasis, bell_plus, ghz3

__all__ = [
    "DecoherenceParams",
    "DensityMatrix",
    "KrausChannel",
    "MeasurementBasis",
    "PureState",
    "amplitude_damping",
    "apply_local",
    "bell_plus",
    "depolarizing",
    "ghz3",
]
