# Semigame - Test Suite
# Tests for the semi-restricted game solver and experiment toolkit

__version__ = "1.0.0"

# Tests are organized into:
# - core/: Per-module tests (graph, algebra, simplex, solver, strategies, simulate, oblivious, restricted, cli)
# - integration/: Acceptance runs over enumerations and large boxes
# - fixtures/: Sample digraphs and temporary cache directories
