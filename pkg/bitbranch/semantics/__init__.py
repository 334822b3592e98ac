"""Small-width two's-complement semantics: evaluation, interpretation and reachability."""
