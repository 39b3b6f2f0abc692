"""Usage-history dynamics: multiplicative forgetting updates to base levels.

After each answered query, every selected conditional's base level is
multiplied by (1 + delta) and every unselected one by (1 - delta), with
0 <= delta < 1.  Levels stay strictly positive and are never clamped:
a conditional forgotten down to nearly zero can still be selected when
its spreading activation compensates (that is the point of remembering).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping


@dataclass(frozen=True)
class ActivationState:
    """Per-conditional base levels plus a query counter and reset history."""

    base_levels: Mapping[str, Fraction]
    query_count: int = 0
    resets: tuple[str, ...] = ()

    def __post_init__(self):
        for cid, level in self.base_levels.items():
            if level <= 0:
                raise ValueError(f"base level of {cid!r} must be positive, got {level}")
        if self.query_count < 0:
            raise ValueError("query count must be non-negative")

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(self.base_levels)


def forgetting_factor(delta: Fraction, selected: bool) -> Fraction:
    """1 + delta when the conditional was selected, 1 - delta otherwise."""
    if not 0 <= delta < 1:
        raise ValueError(f"forgetting rate must satisfy 0 <= delta < 1, got {delta}")
    return 1 + delta if selected else 1 - delta


def update_state(state: ActivationState, selection: Iterable[str], delta: Fraction) -> ActivationState:
    """New state with forgetting factors applied and the query counted.

    The input state is left untouched (value semantics).
    """
    chosen = set(selection)
    unknown = chosen - state.ids
    if unknown:
        raise KeyError(f"selection contains unknown conditional ids: {sorted(unknown)}")
    levels = {
        cid: level * forgetting_factor(delta, cid in chosen)
        for cid, level in state.base_levels.items()
    }
    return replace(state, base_levels=levels, query_count=state.query_count + 1)


def reset_state(base_levels: Mapping[str, Fraction], previous: ActivationState | None = None,
                token: str = "base-changed") -> ActivationState:
    """Fresh state from initial base levels, recording the reset event."""
    resets = (previous.resets if previous else ()) + (token,)
    return ActivationState(base_levels=dict(base_levels), query_count=0, resets=resets)
