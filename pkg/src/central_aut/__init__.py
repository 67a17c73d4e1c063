"""Finite p-groups of class 2 all of whose automorphisms are central:
construction and exact verification over prime fields."""

__version__ = "0.1.0"
