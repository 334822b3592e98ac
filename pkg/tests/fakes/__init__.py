from tests.fakes.strategies import bitfree_exprs, exprs, programs

__all__ = ["bitfree_exprs", "exprs", "programs"]
