"""Rational points of varieties over finite fields by geometric resolution."""

__version__ = "0.1.0"
