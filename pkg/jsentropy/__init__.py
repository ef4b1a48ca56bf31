"""James-Stein shrinkage for multi-measurement entropic uncertainty relations."""

__version__ = "0.1.0"
