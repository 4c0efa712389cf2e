"""
p-exponent toolkit command line

Usage:
    python run.py {gen,analyze,classify} ...
"""
