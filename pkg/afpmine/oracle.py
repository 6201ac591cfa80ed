import afpmine as afp
from afpmine.data import Error, VerticalIndex
from afpmine.objective import Pattern, ContractError
from afpmine.math import exact_power_sum
from scipy.special import comb
from typing import NamedTuple
import itertools
import heapq
import numpy as np
import pandas as pd
import logging


MAX_POWERSET_LENGTH = 20
MAX_CANDIDATES = 2**20


class EnumerationGuardError(Error):
    pass


class FrequentItemset(NamedTuple):
    items: Pattern
    support: int


class CoverageReport(NamedTuple):
    pattern: Pattern
    powerset_size: int
    tkp_size: int
    hits: int
    coverage: float

    def to_dict(self):
        return dict(
            powerset_size=self.powerset_size,
            tkp_size=self.tkp_size,
            hits=self.hits,
            coverage=self.coverage,
        )


def _guard_powerset(positions):
    if len(positions) > MAX_POWERSET_LENGTH:
        raise EnumerationGuardError(
            f"Pattern of length {len(positions)} exceeds the power-set "
            f"enumeration limit of {MAX_POWERSET_LENGTH}."
        )


def num_candidates(m, max_len=0):
    "Number of non-empty itemsets of length <= max_len (0: any length)."
    top = m if not max_len else min(m, max_len)
    return sum(comb(m, length, exact=True) for length in range(1, top + 1))


def powerset_support_sum(db, positions):
    """Σ σ(S) over the non-empty subsets S of P, each support recounted."""
    positions = Pattern(positions)
    _guard_powerset(positions)
    incidence = db.to_incidence().values[:, list(positions)]
    # Bit b of a transaction's mask is set when it contains positions[b].
    masks = incidence.astype(np.int64) @ (np.int64(1) << np.arange(len(positions)))
    total = 0
    for subset in range(1, 1 << len(positions)):
        total += int(((masks & subset) == subset).sum())
    return total


def objective_table(db, max_len=0):
    """Objective of every non-empty itemset up to ``max_len`` items, by direct
    summation of (2^|T∩P| − 1) per transaction.

    Rows are ordered by objective descending, then lexicographically by
    internal positions.
    """
    total = num_candidates(db.m, max_len)
    if total > MAX_CANDIDATES:
        raise EnumerationGuardError(
            f"{total} candidate itemsets exceed the enumeration limit of "
            f"{MAX_CANDIDATES}; lower --max-len."
        )
    incidence = db.to_incidence().values
    top = db.m if not max_len else min(db.m, max_len)
    rows = []
    for length in range(1, top + 1):
        for positions in itertools.combinations(range(db.m), length):
            sizes = incidence[:, list(positions)].sum(axis=1)
            covered = exact_power_sum(sizes, exact64=False) - db.n
            rows.append((Pattern(positions), length, length * covered / ((1 << length) - 1)))
    rows.sort(key=lambda row: (-row[2], row[0]))
    return pd.DataFrame(rows, columns=["pattern", "length", "objective"])


def exhaustive_best(db, max_len=0):
    with afp.logging_util.phase_info("Exhaustive enumeration"):
        table = objective_table(db, max_len=max_len)
    if table.empty:
        return None, 0.0
    return table.pattern.iloc[0], float(table.objective.iloc[0])


def exhaustive_topk(db, k, max_len=0):
    table = objective_table(db, max_len=max_len).head(k)
    return list(zip(table.pattern, table.objective.astype(float)))


def top_n_frequent(db, N, index=None):
    """The N itemsets of largest support, ties at the N-th support broken
    lexicographically by internal positions.

    Best-first over the prefix tree: a child never outranks its parent under
    the (−support, positions) key, so items pop in global rank order.
    """
    if N < 1:
        raise ContractError(f"N must be at least 1, got {N}.")
    if index is None:
        index = VerticalIndex.from_database(db)
    heap = [
        (-len(index.tidlists[p]), (p,), index.tidlists[p])
        for p in range(db.m)
        if len(index.tidlists[p])
    ]
    heapq.heapify(heap)
    out = []
    while heap and len(out) < N:
        neg_support, positions, tids = heapq.heappop(heap)
        out.append(FrequentItemset(Pattern(positions), -neg_support))
        for child in range(positions[-1] + 1, db.m):
            child_tids = np.intersect1d(tids, index.tidlists[child], assume_unique=True)
            if len(child_tids):
                heapq.heappush(heap, (-len(child_tids), positions + (child,), child_tids))
    logging.debug(f"Top-{N} frequent itemsets: {len(out)} found.")
    return out


def coverage(db, positions, index=None):
    """Share of P's non-empty subsets that rank among the top 2^|P| − 1
    itemsets by support.
    """
    positions = Pattern(positions)
    if not positions:
        raise ContractError("Coverage is undefined for the empty pattern.")
    _guard_powerset(positions)
    size = (1 << len(positions)) - 1
    tkp = top_n_frequent(db, size, index=index)
    members = set(positions)
    hits = sum(1 for itemset in tkp if members.issuperset(itemset.items))
    return CoverageReport(
        pattern=positions,
        powerset_size=size,
        tkp_size=size,
        hits=hits,
        coverage=hits / size,
    )
