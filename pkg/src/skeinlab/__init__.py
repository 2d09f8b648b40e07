"""skeinlab: exact SL2 trace canonicalization and character-variety checks."""

__version__ = "0.1.0"
