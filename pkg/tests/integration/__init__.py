# Semigame - Integration Tests
# Acceptance runs that enumerate tournaments or solve large boxes
