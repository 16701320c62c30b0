"""Command middleware."""

from src.middleware.error_handler import handle_errors


__all__ = ["handle_errors"]
