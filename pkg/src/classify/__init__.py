"""Singularity classification."""
