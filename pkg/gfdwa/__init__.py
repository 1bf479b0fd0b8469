"""gfdwa - Gradient field dynamic window navigation stack"""
__version__ = "0.3.0"
__author__ = "gfdwa maintainers"
__email__ = "maintainers@gfdwa.dev"
