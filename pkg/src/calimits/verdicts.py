"""Three-valued results with machine-checkable certificates.

Several properties in this package are undecidable in general, so their
checkers are budgeted: they answer True or False only together with a
certificate that an independent verifier can replay, and otherwise
answer Unknown carrying the exhausted budget.  Decidable checks use the
same type with outcome always True/False.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Outcome ``True`` / ``False`` / ``None`` (= unknown), the budget
    that was spent, and a JSON-ready certificate or evidence dict."""

    outcome: bool | None
    budget_used: int = 0
    certificate: dict | None = None

    @property
    def is_true(self):
        return self.outcome is True

    @property
    def is_false(self):
        return self.outcome is False

    @property
    def is_unknown(self):
        return self.outcome is None

    def outcome_name(self):
        return {True: "true", False: "false", None: "unknown"}[self.outcome]

    def to_json_dict(self):
        return {
            "outcome": self.outcome_name(),
            "budget": self.budget_used,
            "certificate": self.certificate,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=True)

    def exit_code(self):
        """CLI convention: 0 true, 1 false, 2 unknown."""
        return {True: 0, False: 1, None: 2}[self.outcome]

    @classmethod
    def true(cls, budget_used=0, certificate=None):
        return cls(True, budget_used, certificate)

    @classmethod
    def false(cls, budget_used=0, certificate=None):
        return cls(False, budget_used, certificate)

    @classmethod
    def unknown(cls, budget_used=0, certificate=None):
        return cls(None, budget_used, certificate)
