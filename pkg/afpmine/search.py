import afpmine as afp
from afpmine.data import ParameterError
from afpmine.objective import EvalState
from afpmine.bounds import BoundContext, ub_general
from dataclasses import dataclass, field
import heapq
import logging
import sys
import time


@dataclass(frozen=True)
class SearchConfig:
    ar0: float = 1.0
    epoch: int = 1000
    delta: float = 0.1
    k: int = 1
    max_len: int = 0  # 0 disables the length cap.

    def __post_init__(self):
        if not self.ar0 >= 1:
            raise ParameterError(f"ar0 must be >= 1, got {self.ar0}.")
        if not (isinstance(self.epoch, int) and self.epoch >= 1):
            raise ParameterError(f"epoch must be a positive integer, got {self.epoch}.")
        if not self.delta >= 0:
            raise ParameterError(f"delta must be >= 0, got {self.delta}.")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ParameterError(f"k must be a positive integer, got {self.k}.")
        if not (isinstance(self.max_len, int) and self.max_len >= 0):
            raise ParameterError(f"max_len must be >= 0, got {self.max_len}.")

    def to_dict(self):
        return dict(
            k=self.k,
            ar0=self.ar0,
            epoch=self.epoch,
            delta=self.delta,
            max_len=self.max_len,
        )


class ArSchedule:
    """Approximation ratio that grows by ``delta`` every ``epoch`` counted
    nodes: the ratio moves once the counter exceeds ``epoch``, and the
    counter then drops by ``epoch``.
    """

    def __init__(self, ar0, epoch, delta):
        self.ar0 = ar0
        self.epoch = epoch
        self.delta = delta
        self.steps = 0
        self.visited_since_epoch = 0
        self.total_counted = 0

    @property
    def ar(self):
        # Never a running sum.
        return self.ar0 + self.delta * self.steps

    def count(self, times=1):
        for _ in range(times):
            self.total_counted += 1
            self.visited_since_epoch += 1
            if self.visited_since_epoch > self.epoch:
                self.steps += 1
                self.visited_since_epoch -= self.epoch
                logging.debug(
                    f"Approximation ratio raised to {self.ar} "
                    f"after {self.total_counted} nodes."
                )
        return self

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(ar={self.ar}, "
            f"visited_since_epoch={self.visited_since_epoch})"
        )


def schedule_count(sched, times=1):
    return sched.count(times)


@dataclass
class SearchResult:
    patterns: list = field(default_factory=list)  # [(Pattern, objective)]
    ar_final: float = 1.0
    nodes_visited: int = 0
    nodes_pruned: int = 0
    elapsed: float = 0.0

    @property
    def best(self):
        return self.patterns[0] if self.patterns else None

    @property
    def objectives(self):
        return [value for _, value in self.patterns]


class _PatternPool:
    """The k best (pattern, objective) pairs seen so far.

    Entries are keyed by (objective, -discovery order) so that among equal
    objectives the latest discovered is evicted first.
    """

    def __init__(self, k):
        self.k = k
        self._heap = []
        self._discovered = 0

    @property
    def threshold(self):
        if len(self._heap) < self.k:
            return 0.0
        return self._heap[0][0]

    def offer(self, pattern, value):
        order = self._discovered
        self._discovered += 1
        entry = (value, -order, pattern)
        if len(self._heap) < self.k:
            heapq.heappush(self._heap, entry)
        elif value > self._heap[0][0]:
            heapq.heapreplace(self._heap, entry)

    def ranked(self):
        return [
            (pattern, value)
            for value, _, pattern in sorted(self._heap, key=lambda e: (-e[0], -e[1]))
        ]


class ApproximateBranchAndBound:
    """Depth-first traversal of the support-descending prefix tree.

    A node is entered only when its bound exceeds threshold · ar; after its
    children are explored it is counted against the ratio schedule.
    """

    def __init__(self, db, index, cfg):
        self.db = db
        self.cfg = cfg
        self.ctx = BoundContext.from_database(db)
        self.state = EvalState(db, index)
        self.schedule = ArSchedule(cfg.ar0, cfg.epoch, cfg.delta)
        self.pool = _PatternPool(cfg.k)
        self.nodes_visited = 0
        self.nodes_pruned = 0

    def _visit(self, position):
        stack = self.state.stack
        if self.cfg.max_len and len(stack) + 1 > self.cfg.max_len:
            self.nodes_pruned += 1
            return
        s_lin = self.state.s_lin + int(self.ctx.supports[position])
        bound = ub_general(self.ctx, stack + [position], s_lin)
        if not bound > self.pool.threshold * self.schedule.ar:
            self.nodes_pruned += 1
            return

        self.state.push(position)
        self.pool.offer(self.state.pattern, self.state.objective())
        for child in range(position + 1, self.db.m):
            self._visit(child)
        self.state.pop()

        self.nodes_visited += 1
        self.schedule.count()

    def run(self):
        start_time = time.time()
        # Recursion depth follows pattern length.
        sys.setrecursionlimit(max(sys.getrecursionlimit(), self.db.m + 100))
        # The empty root is neither evaluated, pruned nor counted.
        for position in range(self.db.m):
            self._visit(position)
        result = SearchResult(
            patterns=self.pool.ranked(),
            ar_final=self.schedule.ar,
            nodes_visited=self.nodes_visited,
            nodes_pruned=self.nodes_pruned,
            elapsed=time.time() - start_time,
        )
        logging.info(
            f"Search visited {result.nodes_visited} nodes, "
            f"pruned {result.nodes_pruned}, final ratio {result.ar_final}."
        )
        return result


def abb_topk(db, index, cfg):
    if db.n == 0 or db.m == 0:
        logging.warning("Empty database; nothing to mine.")
        return SearchResult(ar_final=cfg.ar0)
    with afp.logging_util.phase_info(
        f"Mining top-{cfg.k} patterns over n={db.n}, m={db.m}, q_max={db.q_max}"
    ):
        return ApproximateBranchAndBound(db, index, cfg).run()


def abb_best(db, index, cfg):
    if cfg.k != 1:
        raise ParameterError(f"abb_best searches a single pattern, got k={cfg.k}.")
    return abb_topk(db, index, cfg)
