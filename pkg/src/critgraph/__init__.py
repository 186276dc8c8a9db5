"""Dense chromatic-critical graphs of prescribed odd girth: constructions,
exact verification, proof-derived colorings and density bookkeeping."""

__version__ = "0.1.0"
