"""Exact cover by bit-set Algorithm X.

Rows and columns are plain integers; a row is the bit-set of the columns it
covers. The search picks the uncovered column with the fewest live rows, and
remembers uncovered-column sets already shown unsolvable. When the live
problem falls apart into independent pieces, each piece is solved on its own,
so a refutation in one piece is never repeated for every solution of another.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence


class BudgetExceeded(Exception):
    pass


@dataclass
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    nodes: int = 0
    _deadline: float | None = field(default=None, repr=False)
    _started: bool = field(default=False, repr=False)

    def start(self) -> None:
        """Arm the clock; later calls keep the running count and deadline."""
        if self._started:
            return
        self._started = True
        if self.max_seconds is not None:
            self._deadline = time.monotonic() + self.max_seconds

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded
        if self._deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self._deadline:
            raise BudgetExceeded


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class ExactCover:
    """Exact cover instance over columns ``0..n_columns-1``.

    Columns in the ``secondary`` bit-set must be covered at most once instead
    of exactly once. The search branches on primary columns only, so a row
    with no primary column is never chosen.
    """

    def __init__(self, n_columns: int, rows: Sequence[int], secondary: int = 0):
        self.n_columns = n_columns
        self.secondary = secondary
        self.primary = ((1 << n_columns) - 1) & ~secondary
        self.rows = list(rows)
        self.col_rows = [0] * n_columns
        for r, mask in enumerate(self.rows):
            for c in _bits(mask):
                self.col_rows[c] |= 1 << r
        # rows sharing a column with row r (including r)
        self.conflicts = []
        for mask in self.rows:
            acc = 0
            for c in _bits(mask):
                acc |= self.col_rows[c]
            self.conflicts.append(acc)
        self.budget = Budget()

    def _live_rows(self, uncovered: int) -> int:
        covered = ((1 << self.n_columns) - 1) & ~uncovered
        live = (1 << len(self.rows)) - 1
        for c in _bits(covered):
            live &= ~self.col_rows[c]
        return live

    def _components(self, uncovered: int, live: int) -> list[int]:
        """Split uncovered columns into groups linked by live rows."""
        comps = []
        left = uncovered
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                rows = 0
                for c in _bits(frontier):
                    rows |= self.col_rows[c]
                rows &= live
                cols = 0
                for r in _bits(rows):
                    cols |= self.rows[r]
                frontier = cols & ~comp
                comp |= cols
            comps.append(comp)
            left &= ~comp
        return comps

    def _choose(self, uncovered: int, live: int) -> tuple[int, int, int]:
        """Primary column with the fewest live rows."""
        col_rows = self.col_rows
        best_col, best_rows, best_n = -1, 0, -1
        left = uncovered & self.primary
        while left:
            low = left & -left
            c = low.bit_length() - 1
            left ^= low
            rows = col_rows[c] & live
            n = rows.bit_count()
            if best_n < 0 or n < best_n:
                best_col, best_rows, best_n = c, rows, n
                if n <= 1:
                    break
        return best_col, best_rows, best_n

    def _boundary_reason(self, uncovered: int, covered: int) -> int:
        """Covered columns that rule out every row leaving ``uncovered``."""
        touching = 0
        for c in _bits(uncovered):
            touching |= self.col_rows[c]
        reason = 0
        for r in _bits(touching):
            out = self.rows[r] & ~uncovered
            if out:
                reason |= self._killer[r] if self._killer[r] & covered else out & covered & -(out & covered)
        return reason

    def _kill(self, r: int, live: int) -> None:
        mask = self.rows[r]
        for k in _bits(self.conflicts[r] & live):
            shared = self.rows[k] & mask
            self._killer[k] = shared & -shared

    # Returns (solution, None) or (None, conflict). The conflict is a set of
    # covered columns such that any state covering all of them, while leaving
    # this subproblem's columns open, has no exact cover.
    def _solve(self, uncovered: int, covered: int, live: int) -> tuple[list[int] | None, int]:
        if not uncovered & self.primary:
            return [], 0
        hit = self._dead.get(uncovered)
        if hit is not None:
            return None, hit if hit & ~covered == 0 else self._boundary_reason(uncovered, covered)
        good = self._good.get(uncovered)
        if good is not None:
            return good, 0
        self.budget.tick()

        best_col, best_rows, best_n = self._choose(uncovered, live)

        conflict = 0
        for r in _bits(self.col_rows[best_col] & ~live):
            conflict |= self._killer[r]
        if best_n == 0:
            self._dead[uncovered] = conflict
            return None, conflict

        if self.split and best_n > 1:
            comps = self._components(uncovered, live)
            if len(comps) > 1:
                # smallest pieces first: they fail fastest
                comps.sort(key=int.bit_count)
                chosen: list[int] = []
                for comp in comps:
                    if not comp & self.primary:
                        continue
                    sub, why = self._solve(comp, covered, live)
                    if sub is None:
                        self._dead[uncovered] = why
                        return None, why
                    chosen += sub
                self._good[uncovered] = chosen
                return chosen, 0

        for r in _bits(best_rows):
            mask = self.rows[r]
            self._kill(r, live)
            sub, why = self._solve(uncovered & ~mask, covered | mask, live & ~self.conflicts[r])
            if sub is not None:
                sol = [r] + sub
                self._good[uncovered] = sol
                return sol, 0
            if not why & mask and self.backjump:
                # this row played no part in the failure
                self._dead[uncovered] = why
                return None, why
            conflict |= why & ~mask
        self._dead[uncovered] = conflict
        return None, conflict

    def solve(
        self, budget: Budget | None = None, split: bool = True, backjump: bool = True
    ) -> list[int] | None:
        """Row indices of one exact cover, or None if there is none.

        Raises :class:`BudgetExceeded` when the budget runs out first.
        """
        self.budget = budget or Budget()
        self.budget.start()
        self.split = split
        self.backjump = backjump
        self._dead: dict[int, int] = {}
        self._good: dict[int, list[int]] = {}
        self._killer = [0] * len(self.rows)
        full = (1 << self.n_columns) - 1
        return self._solve(full, 0, self._live_rows(full))[0]


    def patterns(self, budget: Budget | None = None) -> frozenset[int]:
        """Every secondary-column set used by some exact cover of the primaries."""
        self.budget = budget or Budget()
        self.budget.start()
        memo: dict[int, frozenset[int]] = {}
        primary, secondary = self.primary, self.secondary

        def walk(uncovered: int, live: int) -> frozenset[int]:
            # secondary columns used from here on, for each way to finish
            if not uncovered & primary:
                return frozenset((0,))
            got = memo.get(uncovered)
            if got is not None:
                return got
            self.budget.tick()
            _, rows, n = self._choose(uncovered, live)
            out: set[int] = set()
            for r in _bits(rows):
                mask = self.rows[r]
                used = mask & secondary
                tails = walk(uncovered & ~mask, live & ~self.conflicts[r])
                out.update(tails if not used else (used | t for t in tails))
            got = frozenset(out)
            memo[uncovered] = got
            return got

        full = (1 << self.n_columns) - 1
        return walk(full, self._live_rows(full))


def brute_force_covers(n_columns: int, rows: Sequence[int]) -> list[list[int]]:
    """All exact covers by plain subset enumeration; for small test oracles."""
    full = (1 << n_columns) - 1
    out = []
    for pick in range(1 << len(rows)):
        acc, ok = 0, True
        for r in _bits(pick):
            if acc & rows[r]:
                ok = False
                break
            acc |= rows[r]
        if ok and acc == full:
            out.append(list(_bits(pick)))
    return out
