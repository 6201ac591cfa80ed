import json


class RunReport:
    """JSON-shaped record of one mining run.

    Top-level sections: ``config``, ``dataset``, ``result``, ``timing``.
    Everything outside ``timing`` is deterministic for fixed inputs.
    """

    sections = ("config", "dataset", "result", "timing")

    def __init__(self, data):
        missing = [k for k in self.sections if k not in data]
        if missing:
            raise ValueError(f"Report is missing sections {missing}.")
        self.data = data

    @classmethod
    def from_run(
        cls,
        db,
        cfg,
        result,
        source=None,
        coverage_reports=None,
        show_positions=False,
    ):
        patterns = []
        for i, (pattern, value) in enumerate(result.patterns):
            entry = dict(
                items=db.ids_of(pattern),
                length=len(pattern),
                objective=value,
            )
            if db.labels is not None:
                entry["labels"] = db.labels_of(pattern)
            if show_positions:
                entry["positions"] = list(pattern)
            if coverage_reports is not None:
                entry["coverage"] = coverage_reports[i].to_dict()
            patterns.append(entry)
        return cls(
            dict(
                config=cfg.to_dict(),
                dataset=dict(source=source, n=db.n, m=db.m, q_max=db.q_max),
                result=dict(
                    patterns=patterns,
                    ar_final=result.ar_final,
                    nodes_visited=result.nodes_visited,
                    nodes_pruned=result.nodes_pruned,
                ),
                timing=dict(elapsed_seconds=result.elapsed),
            )
        )

    @property
    def patterns(self):
        return self.data["result"]["patterns"]

    def to_json(self):
        return json.dumps(self.data, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    def dump(self, path_or_handle):
        if hasattr(path_or_handle, "write"):
            path_or_handle.write(self.to_json())
        else:
            with open(path_or_handle, "w", encoding="utf-8") as f:
                f.write(self.to_json())

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())

    def without_timing(self):
        return {k: v for k, v in self.data.items() if k != "timing"}

    def __eq__(self, other):
        return isinstance(other, RunReport) and self.data == other.data

    def __repr__(self):
        return f"{self.__class__.__name__}({self.data['result']['patterns']!r})"
