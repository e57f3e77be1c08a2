"""Configuration settings for vpgkit."""

import os
from dataclasses import dataclass
from dotenv import load_dotenv

load_dotenv()


@dataclass
class Settings:
    """Toolkit settings loaded from environment variables."""

    # Randomized tests and fold order
    seed: int

    # Intra-operation parallelism
    jobs: int

    # Logging
    log_file: str
    log_level: str

    # Plain-text word syntax
    inverse_style: str
    inverse_suffix: str

    # Caps for materialised groups and coset enumeration
    group_cap: int
    coset_cap: int

    # Bottom-of-stack spelling in files
    bottom: str

    # Verbose flag (set at runtime)
    verbose: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        """Create settings from environment variables."""
        return cls(
            seed=int(os.getenv("VPGKIT_SEED", "20240521")),
            jobs=int(os.getenv("VPGKIT_JOBS", "1")),
            log_file=os.getenv("VPGKIT_LOG_FILE", "vpgkit.log"),
            log_level=os.getenv("VPGKIT_LOG_LEVEL", "INFO"),
            inverse_style=os.getenv("VPGKIT_INVERSE_STYLE", "uppercase"),
            inverse_suffix=os.getenv("VPGKIT_INVERSE_SUFFIX", "^-1"),
            group_cap=int(os.getenv("VPGKIT_GROUP_CAP", "100000")),
            coset_cap=int(os.getenv("VPGKIT_COSET_CAP", "10000")),
            bottom=os.getenv("VPGKIT_BOTTOM", "⊥"),
        )


# Global settings instance
settings = Settings.from_env()
