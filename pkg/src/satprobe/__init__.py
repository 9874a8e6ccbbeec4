"""Random and paired SAT instances, reductions, and paired evaluation metrics."""

__version__ = "0.1.0"
