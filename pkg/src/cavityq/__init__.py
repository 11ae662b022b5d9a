"""Cavity quality-factor toolkit: cat-state preparation, decoherence,
Wigner tomography and charge-qubit readout."""

__version__ = "0.1.0"
