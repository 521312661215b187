import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Settings:
    """Toolkit configuration.

    Only the help-text width comes from the environment; everything that can
    change a command's output is a constant here or a command-line flag.
    """

    # Presentation
    VERSION: str = "1.0.0"

    OUTPUT_WIDTH: int = int(os.getenv("CONIC_OUTPUT_WIDTH", "100"))

    # Exact arithmetic
    TRIAL_DIVISION_BOUND: int = 10_000
    # Deterministic Miller-Rabin witnesses, exact below MILLER_RABIN_LIMIT
    MILLER_RABIN_WITNESSES: tuple = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    MILLER_RABIN_LIMIT: int = 3_317_044_064_679_887_385_961_981

    # Sweeps
    CONVENIENT_SWEEP_MAX: int = 1365
    ORACLE_SWEEP_MAX: int = 3000

    # Generator cache
    CACHE_KEY_PREFIX: str = "zeta"
    CACHE_TTL_SECONDS: int = 7 * 24 * 3600

    # Logging
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# Create a global settings instance
settings = Settings()
