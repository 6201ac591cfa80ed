import math
import numpy as np


def scaled_power_sum(exponents, shift):
    "Σ 2^(e - shift) over an integer array, in floating point."
    return float(np.ldexp(1.0, (np.asarray(exponents) - shift).astype(np.int32)).sum())


def exact_power_sum(exponents, exact64=True):
    """Σ 2^e over an integer array as a Python int.

    With ``exact64`` the sum is vectorised in int64, which is exact as long as
    max(e) + log2(len) stays below 63; otherwise elements are summed as
    unbounded Python ints.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    if exact64:
        return int(np.left_shift(np.int64(1), exponents).sum())
    return sum(1 << int(e) for e in exponents)


def fits_int64(q_max, n):
    "Whether Σ_T 2^|T∩P| fits in int64 for every P."
    return q_max + math.ceil(math.log2(max(n, 1))) <= 62


def mersenne_ratio(length, numerator_scaled):
    """length · x / (1 − 2^-length) where x is already scaled by 2^-length.

    This is the overflow-safe form of length · X / (2^length − 1).
    """
    return length * numerator_scaled / (1.0 - math.ldexp(1.0, -length))

