"""Shared configuration, logging, errors and worker helpers for the de Bruijn code toolkit."""

# -*- coding: utf-8 -*-
# debruijn_core.py
import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor, as_completed
from logging.handlers import RotatingFileHandler

# ==============================================================================
#  CONFIG CLASS
# ==============================================================================
class Config:
    """Static paths and limits used by the library and the command line front end."""

    @staticmethod
    def _pick_writable_dir(primary: str, fallback: str) -> str:
        """
        Prefer primary; if we cannot create/write there, use fallback.
        Returns a directory path that is guaranteed (best-effort) to exist and be writable.
        """
        try:
            os.makedirs(primary, exist_ok=True)
            test_path = os.path.join(primary, ".__write_test__")
            with open(test_path, "w", encoding="utf-8") as f:
                f.write("ok")
            os.remove(test_path)
            return primary
        except Exception:
            pass

        os.makedirs(fallback, exist_ok=True)
        return fallback

    # 1. User data directory (logs)
    _HOME_PATH = os.getenv("DEBRUIJN_HOME") or os.path.join(os.path.expanduser("~"), ".debruijn_codes")
    _TEMP_PATH = os.path.join(tempfile.gettempdir(), "debruijn_codes")

    DATA_DIR = _pick_writable_dir(_HOME_PATH, _TEMP_PATH)
    LOG_FILE = os.path.join(DATA_DIR, "debruijn.log")

    # 2. Limits
    SET_OPERATION_CAP = 2 ** 26
    SEARCH_CANDIDATE_CAP = 2 ** 26
    SUBSET_SEARCH_CAP = 2 ** 22
    DOT_EXPORT_CAP = 512
    AUTOMORPHISM_CAP = 9
    MAX_PERMUTATION_ALPHABET = 10
    MAX_ALPHABET = 36

    # Settings
    WORKERS = 1
    DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

# ==============================================================================
#  LOGGING
# ==============================================================================


def configure_logger():
    """Configure a rotating file logger for the toolkit (quiet console, verbose file)."""
    logger = logging.getLogger("debruijn")
    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)

    try:
        os.makedirs(Config.DATA_DIR, exist_ok=True)
        file_handler = RotatingFileHandler(Config.LOG_FILE, maxBytes=1_000_000, backupCount=3, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s - %(message)s"))
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)
        file_error = None
    except OSError as e:
        file_error = e

    console = logging.StreamHandler()
    console.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    console.setLevel(logging.INFO)
    logger.addHandler(console)

    logger.propagate = False
    if file_error is not None:
        logger.warning("Log file %s unavailable, logging to console only: %s", Config.LOG_FILE, file_error)
    return logger


def get_logger(name=None):
    base_logger = configure_logger()
    return base_logger.getChild(name) if name else base_logger


LOGGER = get_logger(__name__)

# ==============================================================================
#  ERRORS
# ==============================================================================
class DeBruijnError(Exception):
    """Base class for every error raised by the toolkit."""


class WordRangeError(DeBruijnError, IndexError):
    """A position or rank lies outside the word or the vertex range."""


class AlphabetError(DeBruijnError, ValueError):
    """A letter is not in A_d, or two operands use different alphabets."""


class PreconditionError(DeBruijnError, ValueError):
    """An operation was called outside its documented domain."""


class SpaceMismatchError(DeBruijnError, ValueError):
    """A word or vertex set belongs to a different B(d, n)."""


class UnsupportedParametersError(DeBruijnError, ValueError):
    """The hypotheses of the requested construction do not hold."""

    def __init__(self, message, hint=None):
        super().__init__(message if not hint else f"{message} (try: {hint})")
        self.hint = hint


class NotIdentifiableError(DeBruijnError):
    """Two vertices share their in-ball, so no identifying code can exist."""

    def __init__(self, message, twins):
        super().__init__(message)
        self.twins = twins


class NoKnownConstructionError(DeBruijnError):
    """No closed-form construction covers the parameters; a search may still succeed."""


class ConstructionUnverifiedError(DeBruijnError):
    """A constructed set was rejected by its brute-force oracle."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceLimitError(DeBruijnError):
    """A configured size cap was exceeded."""


class SearchBudgetError(ResourceLimitError):
    """A search level holds more candidates than the budget allows."""

    def __init__(self, message, last_exhausted_size=None):
        super().__init__(message)
        self.last_exhausted_size = last_exhausted_size


class SearchCancelled(DeBruijnError):
    """A search was interrupted through its check_cancel hook."""

    def __init__(self, message, last_exhausted_size=None):
        super().__init__(message)
        self.last_exhausted_size = last_exhausted_size


class ExportError(DeBruijnError):
    """A file could not be written or parsed."""

# ==============================================================================
#  WORKERS
# ==============================================================================


def check_cap(count, cap, what):
    """Raise ResourceLimitError when count exceeds cap."""
    if count > cap:
        raise ResourceLimitError(f"{what}: {count} exceeds the configured cap of {cap}")


def run_partitioned(total, worker, workers=None, progress_callback=None):
    """
    Evaluate worker(start, stop) over contiguous chunks of range(total).

    Chunks run on a thread pool when workers > 1. Results come back in chunk order,
    so callers can reduce them sequentially.
    """
    workers = Config.WORKERS if workers is None else workers
    if total <= 0:
        return []
    chunk_count = max(1, min(total, workers * 4 if workers > 1 else 1))
    step = -(-total // chunk_count)
    bounds = [(start, min(total, start + step)) for start in range(0, total, step)]

    if workers <= 1 or len(bounds) == 1:
        results = []
        for start, stop in bounds:
            results.append(worker(start, stop))
            if progress_callback:
                progress_callback(stop, total)
        return results

    results = [None] * len(bounds)
    done = 0
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(worker, start, stop): idx for idx, (start, stop) in enumerate(bounds)}
        for future in as_completed(futures):
            idx = futures[future]
            results[idx] = future.result()
            start, stop = bounds[idx]
            done += stop - start
            if progress_callback:
                progress_callback(done, total)
    return results
