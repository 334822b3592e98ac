"""Domain models for the bitbranch package."""
