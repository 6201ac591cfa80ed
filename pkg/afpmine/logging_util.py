import time
from contextlib import contextmanager
import logging


@contextmanager
def phase_info(name, level=logging.INFO):
    """Log the start and end of a phase.

    Yields a dict whose ``elapsed`` entry (seconds) is filled in on exit.
    """
    timing = dict(elapsed=None)
    start_time = time.perf_counter()
    logging.log(level, f"START: {name}")
    try:
        yield timing
    finally:
        timing["elapsed"] = time.perf_counter() - start_time
        logging.log(level, f"END: {name} (took {timing['elapsed']:.3f} seconds)")
