from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Result of an exhaustive or sampled check; ``witness`` is set on failure."""

    ok: bool
    checked: int
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def format(self) -> str:
        head = "pass" if self.ok else "fail"
        tail = f" witness={self.witness}" if self.witness is not None else ""
        note = f" {self.detail}" if self.detail else ""
        return f"{head} checked={self.checked}{note}{tail}"
