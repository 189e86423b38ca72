"""Geometric thickness toolkit: exact drawings, kernels, extension solving and reductions."""

from __future__ import annotations

__version__ = "0.1.0"
