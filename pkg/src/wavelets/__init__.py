"""Wavelet transforms and fractional integration."""
