"""Event-pair mining, instruction-dataset construction, and evaluation utilities."""

__version__ = "0.1.0"
