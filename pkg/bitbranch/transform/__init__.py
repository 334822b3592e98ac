"""Translation of programs, branch normalisation and control-flow automata."""
