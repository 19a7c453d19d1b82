# Semigame - Exact solver and experiment toolkit for semi-restricted digraph games
# Package initialization

__version__ = "1.0.0"
