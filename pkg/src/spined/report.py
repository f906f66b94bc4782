"""Check rows shared by every verifier."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Check:
    check: str
    anchor: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "anchor": self.anchor, "pass": self.passed,
                "witness": _jsonable(self.witness)}


def _jsonable(w):
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    if isinstance(w, dict):
        return {str(k): _jsonable(v) for k, v in w.items()}
    if isinstance(w, (frozenset, set)):
        return sorted(_jsonable(v) for v in w)
    if w is None or isinstance(w, (bool, int, float, str)):
        return w
    return str(w)


class Checker:
    """Collects named identities, keeping the first counterexample of each."""

    def __init__(self, anchor: str):
        self.anchor = anchor
        self._order: list[str] = []
        self._failures: dict[str, Any] = {}

    def expect(self, name: str, cond: bool, witness=None) -> bool:
        if name not in self._failures and name not in self._order:
            self._order.append(name)
        if not cond and name not in self._failures:
            self._failures[name] = witness
        return cond

    def rows(self) -> list[Check]:
        return [Check(name, self.anchor, name not in self._failures, self._failures.get(name))
                for name in self._order]

    @property
    def failures(self) -> dict[str, Any]:
        return dict(self._failures)


def all_passed(rows) -> bool:
    return all(r.passed for r in rows)


def first_failure(rows) -> Check | None:
    return next((r for r in rows if not r.passed), None)
