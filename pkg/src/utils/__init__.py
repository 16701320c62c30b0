"""Application utils."""
