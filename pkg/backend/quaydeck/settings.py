"""
Settings for the quaydeck project.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv(Path(__file__).resolve().parent.parent.parent / '.env')

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent
PROJECT_ROOT = BASE_DIR.parent

# Logging
LOG_LEVEL = os.getenv('QUAYDECK_LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Worker pool used by the benchmark harness
THREADS = max(1, int(os.getenv('QUAYDECK_THREADS', '1')))

# Crane and gantry timings (seconds)
ALPHA_SECONDS = float(os.getenv('QUAYDECK_ALPHA', '90'))
BETA_SECONDS = float(os.getenv('QUAYDECK_BETA', '170'))
GAMMA_SECONDS = float(os.getenv('QUAYDECK_GAMMA', '60'))

# Output files (instances, traces, benchmark reports)
OUTPUT_DIR = Path(os.getenv('QUAYDECK_OUTPUT_DIR', str(PROJECT_ROOT / 'output')))


def worker_count() -> int:
    """Re-read QUAYDECK_THREADS so callers see changes made after import."""
    return max(1, int(os.getenv('QUAYDECK_THREADS', str(THREADS))))


# GA parameters may be preset as QUAYDECK_GA_<NAME>, e.g. QUAYDECK_GA_POPULATION_SIZE=100
GA_ENV_PREFIX = 'QUAYDECK_GA_'


def ga_environment() -> dict:
    return {
        key[len(GA_ENV_PREFIX):].lower(): value
        for key, value in os.environ.items()
        if key.startswith(GA_ENV_PREFIX)
    }
