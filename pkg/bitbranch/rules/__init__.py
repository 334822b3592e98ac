"""Rule catalog, matching and exhaustive rule checking."""
