"""Exact toolkit for Dirac structures: linear algebra, Courant calculus, frames on R^n and T^n."""

__version__ = "0.1.0"
