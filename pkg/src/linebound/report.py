"""Pass/fail records for the verification checks."""

from __future__ import annotations

import json
import time
import traceback
from dataclasses import asdict, dataclass, field
from typing import Any, Callable


@dataclass
class ReportEntry:
    check_id: str
    paper_location: str
    expected: Any
    observed: Any
    passed: bool
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.paper_location:
            raise ValueError("every entry needs a location label")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.paper_location} [{self.check_id}]: expected {_short(self.expected)}, "
                f"observed {_short(self.observed)}, {status}")


def _short(value, limit=160):
    s = json.dumps(value, default=str, sort_keys=True) if not isinstance(value, str) else value
    return s if len(s) <= limit else s[: limit - 3] + "..."


@dataclass
class VerificationReport:
    entries: list[ReportEntry] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(e.passed for e in self.entries)

    def add(self, entry: ReportEntry) -> ReportEntry:
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport"):
        self.entries.extend(other.entries)

    def to_dict(self, with_elapsed: bool = True) -> dict:
        entries = []
        for e in self.entries:
            d = asdict(e)
            if not with_elapsed:
                d.pop("elapsed")
            entries.append(d)
        return {"entries": entries, "overall": self.overall}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), indent=2, default=_jsonable)

    def text(self) -> str:
        lines = [e.line() for e in self.entries]
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} ({len(self.entries)} checks)")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "tolist"):
        return x.tolist()
    return str(x)


def check(check_id: str, location: str, expected, compute: Callable[[], Any],
          compare: Callable[[Any, Any], bool] | None = None) -> ReportEntry:
    """Run ``compute`` and record it against ``expected``.

    Exceptions are caught and reported as failures with the error text as
    the observed value.
    """
    start = time.perf_counter()
    try:
        observed = compute()
        ok = compare(expected, observed) if compare else observed == expected
    except Exception as exc:  # noqa: BLE001 - failures are data here
        observed = f"error: {exc!r}\n{traceback.format_exc(limit=3)}"
        ok = False
    return ReportEntry(check_id, location, expected, observed, bool(ok),
                       time.perf_counter() - start)
