"""Core library modules for gfdwa."""
