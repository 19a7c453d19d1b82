# Semigame - Configuration and Environment Variables
# This module handles loading and managing environment variables

import os
import logging
from typing import List
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables from .env file
load_dotenv()


class Config:
    """Configuration class for the semigame toolkit"""

    # Value-table cache
    CACHE_DIR = os.getenv("SEMIGAME_CACHE", "./cache")

    # Enumeration and search limits
    ENUMERATION_CAP = int(os.getenv("SEMIGAME_ENUMERATION_CAP", "7"))
    CERTIFICATE_CAP = int(os.getenv("SEMIGAME_CERTIFICATE_CAP", "16"))
    CERTIFICATE_SAMPLES = int(os.getenv("SEMIGAME_CERTIFICATE_SAMPLES", "4096"))

    # Numerics
    ZERO_TOLERANCE = float(os.getenv("SEMIGAME_ZERO_TOLERANCE", "1e-9"))

    # Experiments
    DEFAULT_SEED = int(os.getenv("SEMIGAME_SEED", "0"))
    PLAY_MAX_STATES = int(os.getenv("SEMIGAME_PLAY_MAX_STATES", "200000"))

    # Logging
    LOG_LEVEL = os.getenv("SEMIGAME_LOG_LEVEL", "INFO")

    @classmethod
    def validate_config(cls) -> bool:
        """
        Validate that configured values are usable

        Returns:
            bool: True if every setting is in range, False otherwise
        """
        problems: List[str] = []

        if cls.ENUMERATION_CAP < 1:
            problems.append("SEMIGAME_ENUMERATION_CAP")
        if cls.CERTIFICATE_CAP < 1:
            problems.append("SEMIGAME_CERTIFICATE_CAP")
        if cls.CERTIFICATE_SAMPLES < 1:
            problems.append("SEMIGAME_CERTIFICATE_SAMPLES")
        if not cls.ZERO_TOLERANCE > 0:
            problems.append("SEMIGAME_ZERO_TOLERANCE")
        if cls.PLAY_MAX_STATES < 1:
            problems.append("SEMIGAME_PLAY_MAX_STATES")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            problems.append("SEMIGAME_LOG_LEVEL")

        if problems:
            logger.error(f"❌ Invalid environment variables: {problems}")
            return False

        return True


# Create a global config instance
config = Config()
