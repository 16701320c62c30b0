"""nonlocal-cubes package."""

__version__ = "v0.1.0"
