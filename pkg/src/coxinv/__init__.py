"""Exact toolkit for finite Coxeter groups acting on reflection arrangement complements."""

__version__ = "0.1.0"
