"""Explicit symmetric spectra over finite pointed simplicial sets.

Combinatorial constructions (smash products, free spectra, latching objects)
together with an exact integral homology engine and decision procedures for
the lifting and cofibration properties that can be certified at a finite
truncation.
"""

__version__ = "0.1.0"
