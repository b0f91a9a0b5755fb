"""Exact computer algebra for W_{1+infinity}, W_infinity^(n) and gl_infinity windows."""

__version__ = "0.1.0"
