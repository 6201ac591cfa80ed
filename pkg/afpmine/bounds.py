"""Upper bounds on the pattern objective used to prune the prefix tree.

All bounds take a pattern as a sequence of internal positions (only its
length and last position matter) and s_lin = Σ_{i∈P} σ(i).
"""

from afpmine.objective import ContractError
import numpy as np
import math


class BoundContext:
    def __init__(self, q_max, supports):
        self.q_max = int(q_max)
        self.supports = np.asarray(supports, dtype=np.int64)
        self.m = len(self.supports)
        # _cumulative[i] = Σ supports[:i]
        self._cumulative = np.concatenate([[0], np.cumsum(self.supports)]).astype(
            np.int64
        )

    @classmethod
    def from_database(cls, db):
        return cls(db.q_max, db.supports)

    def s_lin(self, positions):
        return int(self.supports[list(positions)].sum())

    def range_support(self, start, stop):
        "Σ σ over positions [start, stop)."
        return int(self._cumulative[stop] - self._cumulative[start])

    def __repr__(self):
        return f"{self.__class__.__name__}(q_max={self.q_max}, m={self.m})"


def _theorem1_value(length, q, s_lin):
    # |P| · 2^q / (q · (2^|P| − 1)) · s_lin, scaled by 2^−|P|.
    if q == 0:
        return 0.0
    return (
        length * math.ldexp(1.0, q - length) / (q * (1.0 - math.ldexp(1.0, -length)))
    ) * s_lin


def ub_theorem1(ctx, positions, s_lin):
    length = len(positions)
    if length == 0:
        raise ContractError("Bound is undefined for the empty pattern.")
    return _theorem1_value(length, min(length, ctx.q_max), s_lin)


def ub_theorem1_refined(ctx, positions, s_lin, min_support):
    """Single-pattern bound keeping the −|P|·min σ / (2^|P| − 1) term.

    Not used for pruning.
    """
    length = len(positions)
    return ub_theorem1(ctx, positions, s_lin) - length * min_support / (
        math.ldexp(1.0, length) - 1.0
    )


def ub_theorem2(ctx, positions, s_lin):
    """Bound for every pattern having ``positions`` as prefix, valid when
    |P| >= q_max >= 3.
    """
    length = len(positions)
    if not (length >= ctx.q_max >= 3):
        raise ContractError(
            f"Long-prefix bound needs |P| >= q_max >= 3, got |P|={length}, q_max={ctx.q_max}."
        )
    return _theorem1_value(length, ctx.q_max, s_lin)


def ub_theorem3(ctx, positions, s_lin=None):
    """Bound for every pattern having ``positions`` as prefix, valid when
    |P| <= q_max.

    Candidates extend P by the next e positions after its last one,
    e = 0 .. min(m − 1 − last, q_max − |P|); each is bounded with the full
    single-pattern expression and the largest value is returned.
    """
    length = len(positions)
    if length == 0:
        raise ContractError("Bound is undefined for the empty pattern.")
    if length > ctx.q_max:
        raise ContractError(
            f"Short-prefix bound needs |P| <= q_max, got |P|={length}, q_max={ctx.q_max}."
        )
    if s_lin is None:
        s_lin = ctx.s_lin(positions)
    last = positions[-1]
    extra = min(ctx.m - 1 - last, ctx.q_max - length)
    best = 0.0
    for e in range(extra + 1):
        size = length + e
        value = _theorem1_value(
            size,
            min(size, ctx.q_max),
            s_lin + ctx.range_support(last + 1, last + 1 + e),
        )
        best = max(best, value)
    return best


def ub_general(ctx, positions, s_lin):
    """Bound for every pattern having ``positions`` as prefix.

    Without q_max >= 3 no bound is available and +inf is returned, so
    nothing is pruned.
    """
    if len(positions) == 0:
        raise ContractError("Bound is undefined for the empty pattern.")
    if ctx.q_max < 3:
        return math.inf
    if len(positions) >= ctx.q_max:
        return ub_theorem2(ctx, positions, s_lin)
    return ub_theorem3(ctx, positions, s_lin)


def ratio_nondecreasing(i, j):
    "2^i / i <= 2^j / j, for 1 <= i <= j."
    return 2.0**i / i <= 2.0**j / j


def squared_growth_bounded(x, t):
    "(1 + x/t)^2 <= 2^x, for positive integer x and t >= 3."
    return (1.0 + x / t) ** 2 <= 2.0**x
