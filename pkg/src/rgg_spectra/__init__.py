"""Spectra of dense random geometric graphs on the L-infinity cube."""

__version__ = "0.1.0"
