"""Global and pointwise exponent estimation."""
