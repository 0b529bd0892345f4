"""
Trailed integer domains for the search.

Every variable has an interval [lo, hi]; booleans are intervals inside
[0, 1]. Changes are recorded on a trail so that a search node can be undone
by rewinding to a mark.
"""

from typing import List, Sequence, Tuple

from formulations.ir import Literal


class Inconsistency(Exception):
    """A domain became empty (internal to the engine, never escapes solve)."""


class DomainStore:
    """Interval domains with an undo trail and a list of touched variables."""

    def __init__(self, lows: Sequence[int], highs: Sequence[int]):
        self.lo: List[int] = list(lows)
        self.hi: List[int] = list(highs)
        self.trail: List[Tuple[int, int, int]] = []
        self.touched: List[int] = []

    @classmethod
    def for_model(cls, model) -> "DomainStore":
        return cls([v.lo for v in model.variables], [v.hi for v in model.variables])

    def copy(self) -> "DomainStore":
        """Independent store with the same domains and an empty trail."""
        return DomainStore(self.lo, self.hi)

    # ------------------------------------------------------------------
    # Trail
    # ------------------------------------------------------------------

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            var, lo, hi = trail.pop()
            self.lo[var] = lo
            self.hi[var] = hi
        self.touched.clear()

    def _save(self, var: int) -> None:
        self.trail.append((var, self.lo[var], self.hi[var]))
        self.touched.append(var)

    # ------------------------------------------------------------------
    # Updates (raise Inconsistency on an empty domain)
    # ------------------------------------------------------------------

    def set_lo(self, var: int, value: int) -> bool:
        if value <= self.lo[var]:
            return False
        if value > self.hi[var]:
            raise Inconsistency(var)
        self._save(var)
        self.lo[var] = value
        return True

    def set_hi(self, var: int, value: int) -> bool:
        if value >= self.hi[var]:
            return False
        if value < self.lo[var]:
            raise Inconsistency(var)
        self._save(var)
        self.hi[var] = value
        return True

    def fix(self, var: int, value: int) -> bool:
        changed = self.set_lo(var, value)
        return self.set_hi(var, value) or changed

    def set_literal(self, lit: Literal, truth: bool) -> bool:
        value = lit.value_making_true() if truth else 1 - lit.value_making_true()
        return self.fix(lit.var, value)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def is_fixed(self, var: int) -> bool:
        return self.lo[var] == self.hi[var]

    def value(self, var: int) -> int:
        return self.lo[var]

    def is_true(self, lit: Literal) -> bool:
        return self.lo[lit.var] == self.hi[lit.var] and lit.holds(self.lo[lit.var])

    def is_false(self, lit: Literal) -> bool:
        return self.lo[lit.var] == self.hi[lit.var] and not lit.holds(self.lo[lit.var])

    def truth(self, lit: Literal):
        """True, False or None (free)."""
        if self.lo[lit.var] != self.hi[lit.var]:
            return None
        return lit.holds(self.lo[lit.var])

    def all_fixed(self) -> bool:
        return all(a == b for a, b in zip(self.lo, self.hi))

    def assignment(self) -> dict:
        return {var: lo for var, lo in enumerate(self.lo)}
