# Semigame - Test Fixtures
# Sample digraphs and temporary cache helpers shared by the test suite
