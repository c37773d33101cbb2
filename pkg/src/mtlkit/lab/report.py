from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "approx-report")


@dataclass
class EquivReport:
    status: str
    models: int
    counterexample: dict = None
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def ok(self):
        return self.status != "fail"

    def to_json(self):
        out = {"status": self.status, "models": self.models,
               "counterexample": self.counterexample, "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.details:
            out["details"] = self.details
        return out
