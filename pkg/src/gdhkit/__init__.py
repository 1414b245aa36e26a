"""Exact computations around holomorphic VOAs of central charge 24, affine
structures of their weight-one Lie algebras and automorphisms of the Leech
lattice."""

__version__ = "0.1.0"
