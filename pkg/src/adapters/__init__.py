"""Arithmetic backends."""
