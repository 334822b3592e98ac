"""Whole-program soundness checks between a program and its transformation."""
