"""Insertion algorithms on combinatorial structures and the rewriting systems they induce."""

__version__ = "0.1.0"
