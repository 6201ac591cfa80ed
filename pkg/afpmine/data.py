import xarray as xr
import csv
import io
import numpy as np
import pandas as pd
import logging
from functools import cached_property


class Error(Exception):
    pass


class DataConstraintError(Error):
    pass


class DataParseError(Error):
    def __init__(self, lineno, token, reason="is not a non-negative integer item id"):
        self.lineno = lineno
        self.token = token
        super().__init__(f"Line {lineno}: {token!r} {reason}.")



class DataShapeError(Error):
    pass


class ParameterError(Error):
    pass


class UnknownItemError(Error):
    pass


class DataConstraint:
    def __init__(self, name, test_func, allow_empty=True):
        self.name = name
        self.test_func = test_func
        self.allow_empty = allow_empty

    def __call__(self, db):
        if db.n == 0:
            if self.allow_empty:
                logging.debug(f"{self.name} not tested because database was empty.")
                return True
            else:
                return False
        else:
            return self.test_func(db)

    def raise_error(self, db):
        raise DataConstraintError(f"Failed constraint: {self.name}")


def _support_descending(db):
    sup = db.supports
    if len(sup) < 2:
        return True
    ids = np.asarray(db.items)
    ordered = (sup[:-1] > sup[1:]) | ((sup[:-1] == sup[1:]) & (ids[:-1] < ids[1:]))
    return bool(ordered.all())


SUPPORT_DESCENDING = DataConstraint("support_descending", _support_descending)
SUPPORT_RECOUNT = DataConstraint(
    "support_recount",
    lambda db: np.array_equal(
        np.bincount(db._indices, minlength=db.m), db.supports
    ),
)
POSITIVE_SUPPORT = DataConstraint(
    "positive_support",
    lambda db: bool((db.supports >= 1).all()),
)
Q_MAX_CONSISTENT = DataConstraint(
    "q_max_consistent",
    lambda db: int(np.diff(db._indptr).max(initial=0)) == db.q_max,
)


class TransactionDatabase:
    """Immutable transactions over an integer item universe.

    Items are stored by internal position: position 0 is the item with the
    largest support, ties ordered by ascending external id. Transactions are
    kept in CSR form (``_indptr``/``_indices``) with positions ascending
    within each transaction.
    """

    constraints = [SUPPORT_DESCENDING, SUPPORT_RECOUNT, POSITIVE_SUPPORT, Q_MAX_CONSISTENT]

    def __init__(self, indptr, indices, items, supports, labels=None):
        self._indptr = np.asarray(indptr, dtype=np.int64)
        self._indices = np.asarray(indices, dtype=np.int64)
        self.items = pd.Index(items, dtype=np.int64, name="item")
        self.supports = np.asarray(supports, dtype=np.int64)
        self.labels = labels
        self.n = len(self._indptr) - 1
        self.m = len(self.items)
        self.q_max = int(np.diff(self._indptr).max(initial=0))

    @classmethod
    def from_transactions(cls, transactions, labels=None, validate=True):
        """Build from an iterable of iterables of external item ids.

        Duplicates within a transaction are dropped; empty transactions are
        kept.
        """
        transactions = [np.unique(np.asarray(list(t), dtype=np.int64)) for t in transactions]
        if transactions:
            flat = np.concatenate(transactions)
        else:
            flat = np.empty(0, dtype=np.int64)
        if (flat < 0).any():
            raise ParameterError("Item ids must be non-negative integers.")
        ids, supports = np.unique(flat, return_counts=True)
        # np.unique returns ids ascending, so a stable sort on support
        # gives the ascending-id tie-break.
        order = np.argsort(-supports, kind="stable")
        ids, supports = ids[order], supports[order]
        position_of = pd.Series(np.arange(len(ids)), index=ids)

        indptr = np.zeros(len(transactions) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(t) for t in transactions])
        indices = [np.sort(position_of.loc[t].values) for t in transactions if len(t)]
        indices = np.concatenate(indices) if indices else np.empty(0, dtype=np.int64)

        if labels is not None:
            labels = {int(i): labels[int(i)] for i in ids}
        db = cls(indptr, indices, ids, supports, labels=labels)
        if validate:
            db.validate_constraints()
        return db

    def validate_constraints(self):
        for constraint in self.constraints:
            if not constraint(self):
                constraint.raise_error(self)

    @cached_property
    def _entry_tids(self):
        return np.repeat(np.arange(self.n), np.diff(self._indptr))

    @cached_property
    def _position_of(self):
        return pd.Series(np.arange(self.m), index=self.items)

    def transaction(self, tid):
        return self._indices[self._indptr[tid] : self._indptr[tid + 1]]

    @property
    def transactions(self):
        return [self.transaction(tid) for tid in range(self.n)]

    def transactions_as_ids(self):
        "Transactions as sorted lists of external ids."
        items = self.items.values
        return [sorted(items[t].tolist()) for t in self.transactions]

    def intersection_sizes(self, positions):
        "Per-transaction |T ∩ P| for a collection of internal positions."
        mask = np.zeros(self.m, dtype=bool)
        mask[np.asarray(positions, dtype=np.int64)] = True
        hit = mask[self._indices]
        return np.bincount(self._entry_tids[hit], minlength=self.n)

    def support(self, positions):
        "σ of an itemset given by internal positions, by recount."
        positions = np.asarray(positions, dtype=np.int64)
        return int((self.intersection_sizes(positions) == len(positions)).sum())

    def positions_of(self, external_ids):
        """Map external ids to internal positions, ascending."""
        external_ids = list(external_ids)
        missing = [i for i in external_ids if i not in self._position_of.index]
        if missing:
            raise UnknownItemError(f"Unknown item id(s): {missing}")
        return sorted({int(p) for p in self._position_of.loc[external_ids].values})

    def ids_of(self, positions):
        return [int(self.items[p]) for p in positions]

    def labels_of(self, positions):
        if self.labels is None:
            return None
        return [self.labels[int(self.items[p])] for p in positions]

    def support_table(self):
        return pd.Series(self.supports, index=self.items, name="support")

    def to_incidence(self):
        "Dense boolean transaction x item matrix, items in internal order."
        x = np.zeros((self.n, self.m), dtype=bool)
        x[self._entry_tids, self._indices] = True
        return xr.DataArray(
            x,
            dims=("transaction", "item"),
            coords=dict(transaction=np.arange(self.n), item=self.items.values),
            name="incidence",
        )

    def summary(self):
        cells = self.n * self.m
        return dict(
            n=self.n,
            m=self.m,
            q_max=self.q_max,
            density=(len(self._indices) / cells) if cells else 0.0,
        )

    def write_fimi(self, path_or_handle):
        lines = [" ".join(str(i) for i in t) for t in self.transactions_as_ids()]
        text = "".join(line + "\n" for line in lines)
        if hasattr(path_or_handle, "write"):
            path_or_handle.write(text)
        else:
            with open(path_or_handle, "w", encoding="utf-8") as f:
                f.write(text)

    def __eq__(self, other):
        return (
            isinstance(other, TransactionDatabase)
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
            and self.items.equals(other.items)
            and np.array_equal(self.supports, other.supports)
        )

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(n={self.n}, m={self.m}, q_max={self.q_max})"
        )


class VerticalIndex:
    """Per-position sorted tid-lists."""

    def __init__(self, tidlists, n):
        self.tidlists = tidlists
        self.n = n

    @classmethod
    def from_database(cls, db):
        # Entries are tid-major, so a stable sort by position leaves each
        # tid-list ascending.
        order = np.argsort(db._indices, kind="stable")
        tids = db._entry_tids[order]
        bounds = np.concatenate([[0], np.cumsum(db.supports)])
        tidlists = [tids[bounds[i] : bounds[i + 1]] for i in range(db.m)]
        return cls(tidlists, db.n)

    @property
    def m(self):
        return len(self.tidlists)

    def to_transactions(self):
        "Horizontal reconstruction: per tid, ascending internal positions."
        out = [[] for _ in range(self.n)]
        for position, tids in enumerate(self.tidlists):
            for tid in tids:
                out[tid].append(position)
        return [np.asarray(t, dtype=np.int64) for t in out]

    def __repr__(self):
        return f"{self.__class__.__name__}(n={self.n}, m={self.m})"


def build_vertical(db):
    return VerticalIndex.from_database(db)


def _read_lines(path_or_handle):
    """Text lines of a file or handle; byte input must be UTF-8."""
    if hasattr(path_or_handle, "read"):
        content = path_or_handle.read()
    else:
        with open(path_or_handle, "rb") as f:
            content = f.read()
    if isinstance(content, str):
        return content.splitlines()
    lines = []
    for lineno, raw in enumerate(content.splitlines(), start=1):
        try:
            lines.append(raw.decode("utf-8"))
        except UnicodeDecodeError as err:
            raise DataParseError(lineno, raw, "is not valid UTF-8") from err
    return lines


def load_fimi(path_or_handle):
    """Read a FIMI flat file: one transaction per line, whitespace-separated
    non-negative integer item ids. Blank lines are empty transactions.
    """
    transactions = []
    for lineno, line in enumerate(_read_lines(path_or_handle), start=1):
        row = []
        for token in line.split():
            if not (token.isascii() and token.isdigit()):
                raise DataParseError(lineno, token)
            row.append(int(token))
        transactions.append(row)
    db = TransactionDatabase.from_transactions(transactions)
    logging.info(f"Loaded {db}.")
    return db


def convert_categorical(rows, missing_marker="?", attribute_names=None):
    """Itemize attribute-value records.

    Every distinct (attribute index, value) pair becomes one item; missing
    values produce no item. Item ids are assigned in ascending
    (attribute, value) order and labelled ``"attr=value"``, where attr is the
    attribute name if given and its index otherwise.
    """
    rows = [[str(v) for v in r] for r in rows]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DataShapeError(f"Rows have differing attribute counts: {sorted(widths)}")
    if attribute_names is None:
        attribute_names = range(max(widths, default=0))
    attribute_names = [str(a) for a in attribute_names]

    pairs = sorted(
        {(j, v) for r in rows for j, v in enumerate(r) if v != missing_marker}
    )
    item_id = {pair: i for i, pair in enumerate(pairs)}
    labels = {i: f"{attribute_names[j]}={v}" for (j, v), i in item_id.items()}
    transactions = [
        [item_id[(j, v)] for j, v in enumerate(r) if v != missing_marker]
        for r in rows
    ]
    return TransactionDatabase.from_transactions(transactions, labels=labels)


def read_categorical_csv(path, header=False, missing_marker="?"):
    lines = _read_lines(path)
    # Field counts come from the raw rows; the parser pads short rows.
    widths = sorted({len(row) for row in csv.reader(lines) if row})
    if len(widths) > 1:
        raise DataShapeError(f"Rows of {path} have differing field counts: {widths}")
    try:
        data = pd.read_csv(
            io.StringIO("\n".join(lines)),
            header=0 if header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        data = pd.DataFrame(dtype=str)
    except pd.errors.ParserError as err:
        raise DataShapeError(str(err)) from err
    db = convert_categorical(
        data.values.tolist(),
        missing_marker=missing_marker,
        attribute_names=(data.columns if header else None),
    )
    logging.info(f"Converted {len(data)} categorical rows into {db}.")
    return db


def generate_synthetic(n, m, density, seed):
    """Each of m items lands in each of n transactions independently with
    probability ``density``; deterministic in ``seed``.
    """
    if not (0 < density <= 1):
        raise ParameterError(f"density must be in (0, 1], got {density}.")
    if n < 1 or m < 1:
        raise ParameterError(f"n and m must be at least 1, got n={n}, m={m}.")
    rng = np.random.default_rng(seed)
    incidence = rng.random((n, m)) < density
    return TransactionDatabase.from_transactions(
        [np.flatnonzero(row) for row in incidence]
    )
