import os

_threads = os.getenv("TDPAIR_THREADS")
if _threads is None:
    THREADS = min(4, os.cpu_count() or 1)
else:
    try:
        THREADS = int(_threads)
    except ValueError:
        raise ValueError(f"TDPAIR_THREADS must be an integer, got {_threads!r}.")
    if THREADS < 1:
        raise ValueError("TDPAIR_THREADS must be at least 1.")

LOG_LEVEL = os.getenv("TDPAIR_LOG_LEVEL", "WARNING").upper()
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise ValueError(f"TDPAIR_LOG_LEVEL is not a logging level: {LOG_LEVEL!r}.")

# beta for diameter <= 2, where the eigenvalues do not determine it
DEFAULT_BETA = os.getenv("TDPAIR_DEFAULT_BETA", "2")

_cap = os.getenv("TDPAIR_WORD_CAP_FACTOR", "2")
try:
    WORD_CAP_FACTOR = int(_cap)
except ValueError:
    raise ValueError(f"TDPAIR_WORD_CAP_FACTOR must be an integer, got {_cap!r}.")
if WORD_CAP_FACTOR < 1:
    raise ValueError("TDPAIR_WORD_CAP_FACTOR must be at least 1.")
