"""Pattern objective: length times the average support of the pattern's
non-empty subsets,

    |P| · Σ_T (2^|T∩P| − 1) / (2^|P| − 1).
"""

from afpmine.data import Error
from afpmine.math import scaled_power_sum, exact_power_sum, fits_int64, mersenne_ratio
import numpy as np
from fractions import Fraction


class ContractError(Error):
    pass


class Pattern(tuple):
    """Itemset as strictly increasing internal positions."""

    def __new__(cls, positions=()):
        positions = tuple(int(p) for p in positions)
        if any(p < 0 for p in positions):
            raise ContractError(f"Negative position in {positions}.")
        if any(a >= b for a, b in zip(positions, positions[1:])):
            raise ContractError(f"Positions must be strictly increasing: {positions}.")
        return super().__new__(cls, positions)

    def subsets(self):
        "All non-empty subsets, as Patterns."
        out = []
        for mask in range(1, 1 << len(self)):
            out.append(Pattern(p for b, p in enumerate(self) if mask >> b & 1))
        return out

    def __repr__(self):
        return f"Pattern({list(self)})"


def _checked(db, positions):
    positions = Pattern(positions)
    if not positions:
        raise ContractError("Objective is undefined for the empty pattern.")
    if positions[-1] >= db.m:
        raise ContractError(f"Position {positions[-1]} out of range for m={db.m}.")
    return positions


def objective_value(db, positions):
    """Objective in the scaled floating form

        |P| · (Σ_T 2^(|T∩P|−|P|) − n·2^−|P|) / (1 − 2^−|P|)

    so that no term exceeds 1 whatever the pattern length.
    """
    positions = _checked(db, positions)
    length = len(positions)
    sizes = db.intersection_sizes(positions)
    scaled = scaled_power_sum(sizes, length) - db.n * np.ldexp(1.0, -length)
    return max(0.0, mersenne_ratio(length, scaled))


def exact_objective_value(db, positions):
    "Objective as an exact rational."
    positions = _checked(db, positions)
    length = len(positions)
    sizes = db.intersection_sizes(positions)
    s_pow = exact_power_sum(sizes, exact64=False)
    return length * Fraction(s_pow - db.n, (1 << length) - 1)


class EvalState:
    """Incremental Σ_T 2^|T∩P| and Σ_T |T∩P| along depth-first extensions.

    Single owner; ``push``/``pop`` mutate in place.
    """

    def __init__(self, db, index):
        self.db = db
        self.index = index
        self.n = db.n
        self.counts = np.zeros(db.n, dtype=np.int64)
        self.s_pow = db.n
        self.s_lin = 0
        self.stack = []
        self._exact64 = fits_int64(db.q_max, db.n)

    def __len__(self):
        return len(self.stack)

    @property
    def pattern(self):
        return Pattern(self.stack)

    def push(self, position):
        if self.stack and position <= self.stack[-1]:
            raise ContractError(
                f"Push of position {position} after {self.stack[-1]} breaks prefix order."
            )
        tids = self.index.tidlists[position]
        self.s_pow += exact_power_sum(self.counts[tids], exact64=self._exact64)
        self.counts[tids] += 1
        self.s_lin += len(tids)
        self.stack.append(position)
        return self

    def pop(self):
        if not self.stack:
            raise ContractError("Pop on an empty evaluation state.")
        position = self.stack.pop()
        tids = self.index.tidlists[position]
        self.counts[tids] -= 1
        self.s_pow -= exact_power_sum(self.counts[tids], exact64=self._exact64)
        self.s_lin -= len(tids)
        return self

    def objective(self):
        """Objective of the current pattern.

        (s_pow − n) and 2^|P| − 1 are exact integers; int / int rounds once.
        """
        length = len(self.stack)
        if length == 0:
            raise ContractError("Objective is undefined for the empty pattern.")
        return length * ((self.s_pow - self.n) / ((1 << length) - 1))

    def recomputed_s_pow(self):
        return exact_power_sum(self.counts, exact64=False)

    def snapshot(self):
        return (self.counts.copy(), self.s_pow, self.s_lin, tuple(self.stack))


def eval_push(state, position):
    return state.push(position)


def eval_pop(state):
    return state.pop()
