# Semigame - Core Functionality Tests
# Tests for individual modules of the toolkit
