"""Bitwise branching: linear over-approximation of bitvector programs."""
