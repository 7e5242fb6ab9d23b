"""Computations with a read-only input register and one writable (qu)bit.

boolfun holds truth tables, weight profiles, and Fourier analysis;
classical computes exact best agreement ratios for the scratch-bit
model; qsp synthesizes signal-processing angle sequences for symmetric
targets; circuits is the gate-level IR with direct constructions and a
merging pass; simulate evaluates words, classifies implementations, and
models per-gate noise; cli ties everything into one binary.
"""

from . import boolfun, circuits, classical, cli, qsp, simulate

__all__ = ["boolfun", "circuits", "classical", "cli", "qsp", "simulate"]
__version__ = "0.1.0"
