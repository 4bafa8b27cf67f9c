"""Machine-readable outcome of a single verified identity."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationItem:
    """One checked claim: what was checked, whether it held, and evidence.

    ``details`` carries exact integers only (dimensions, locations, first
    mismatches); every boolean in it is backed by an exact computation.
    """

    check: str
    ok: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"check": self.check, "ok": self.ok, "details": dict(self.details)}

    def __str__(self):
        state = "PASS" if self.ok else "FAIL"
        extra = " ".join("%s=%s" % kv for kv in sorted(self.details.items(),
                                                       key=lambda kv: kv[0]))
        return "%s %s%s" % (state, self.check, " (%s)" % extra if extra else "")
