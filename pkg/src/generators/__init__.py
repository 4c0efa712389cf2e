"""Reference signals with known p-exponent profiles."""
