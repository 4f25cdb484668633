"""Short quadratic character sums, prime weights and the counting machinery behind them."""

__version__ = "0.1.0"
