"""Query orchestration: prime, label, weigh, activate, select, infer.

A query runs against a session (belief base + activation state).  Labels,
associations, and the activation profile are computed once per query; only
the selection and the System P call vary along the threshold schedule.
The schedule descends from the initial threshold and ends at 0, where the
selection is the whole base and the focused answer coincides with the
full-base answer.  The first non-unknown response stops the iteration.

When forgetting is enabled, the stopping step's selection drives the
base-level update; this includes queries still unknown at threshold 0
(then the selection is the entire base).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .activation import (
    ActivationProfile,
    AssociationMatrix,
    SpreadingNetwork,
    TriggeringLabels,
    activation_profile,
    association_matrix,
    build_network,
    initial_base_levels,
    label_network,
    select,
)
from .errors import SignatureMismatchError
from .inference import BeliefBase, QueryResponse, ZPartition, answer, cached_z_partition
from .logic import Conditional
from .memory import ActivationState, update_state


@dataclass(frozen=True)
class EngineConfig:
    """Threshold schedule and forgetting parameters for one query run.

    Without an explicit schedule, thresholds descend from ``theta`` in
    steps of 1/2, clipped at and terminated by 0.
    """

    theta: Fraction = Fraction(0)
    delta: Fraction = Fraction(1, 5)
    schedule: tuple[Fraction, ...] | None = None
    forgetting_enabled: bool = True

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError(f"theta must be non-negative, got {self.theta}")
        if not 0 <= self.delta < 1:
            raise ValueError(f"delta must satisfy 0 <= delta < 1, got {self.delta}")
        if self.schedule is not None:
            validate_schedule(self.schedule)

    def resolved_schedule(self) -> tuple[Fraction, ...]:
        if self.schedule is not None:
            return self.schedule
        return default_schedule(self.theta)


def default_schedule(theta: Fraction, step: Fraction = Fraction(1, 2)) -> tuple[Fraction, ...]:
    """theta, theta - step, ... while positive, then 0."""
    out: list[Fraction] = []
    current = Fraction(theta)
    while current > 0:
        out.append(current)
        current -= step
    out.append(Fraction(0))
    return tuple(out)


def validate_schedule(schedule: tuple[Fraction, ...]) -> None:
    if not schedule:
        raise ValueError("schedule must not be empty")
    if any(t < 0 for t in schedule):
        raise ValueError("schedule thresholds must be non-negative")
    if schedule[-1] != 0:
        raise ValueError("schedule must end at 0")
    if any(a <= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly decreasing")


@dataclass
class Session:
    """A belief base with its per-base caches and evolving memory state.

    Construction fails on an inconsistent base; the cached partition is
    what every later inference call relies on.  One session serializes its
    queries; share the (immutable) belief base across sessions instead of
    sharing a session between threads.
    """

    base: BeliefBase
    state: ActivationState
    partition: ZPartition = field(repr=False)
    network: SpreadingNetwork = field(repr=False)
    associations: AssociationMatrix = field(repr=False)

    @classmethod
    def start(cls, base: BeliefBase, state: ActivationState | None = None) -> Session:
        partition = cached_z_partition(base)  # raises on inconsistency
        if state is None:
            state = ActivationState(base_levels=initial_base_levels(partition))
        if state.ids != frozenset(base.ids):
            raise ValueError("activation state ids do not match the belief base")
        return cls(
            base=base,
            state=state,
            partition=partition,
            network=build_network(base),
            associations=association_matrix(base),
        )


@dataclass(frozen=True)
class TraceStep:
    theta: Fraction
    selected: tuple[str, ...]
    response: QueryResponse


@dataclass(frozen=True)
class QueryTrace:
    """Everything one query did: labels, profile, steps, outcome, update."""

    query: Conditional
    labels: TriggeringLabels
    profile: ActivationProfile
    steps: tuple[TraceStep, ...]
    response: QueryResponse
    update_selection: tuple[str, ...]
    forgetting_applied: bool
    delta: Fraction


def answer_query(session: Session, query: Conditional,
                 config: EngineConfig | None = None) -> tuple[QueryResponse, QueryTrace]:
    """Run one query through the threshold schedule; apply forgetting.

    Returns the three-valued response together with the full trace.  The
    session's activation state is replaced (never mutated in place) when
    forgetting is enabled.
    """
    config = config or EngineConfig()
    outside = query.atoms() - set(session.base.signature.atoms)
    if outside:
        raise SignatureMismatchError(f"query atoms outside the base signature: {sorted(outside)}")

    labels = label_network(session.network, query)
    profile = activation_profile(session.base, session.state.base_levels,
                                 session.associations, labels)

    steps: list[TraceStep] = []
    response = QueryResponse.UNKNOWN
    selection: tuple[str, ...] = ()
    for theta in config.resolved_schedule():
        selected = session.base.order_ids(select(profile, theta))
        sub_base = session.base.restrict(selected)
        response = answer(sub_base, query)
        steps.append(TraceStep(theta=theta, selected=selected, response=response))
        selection = selected
        if response is not QueryResponse.UNKNOWN:
            break

    if config.forgetting_enabled:
        session.state = update_state(session.state, selection, config.delta)

    trace = QueryTrace(
        query=query,
        labels=labels,
        profile=profile,
        steps=tuple(steps),
        response=response,
        update_selection=selection,
        forgetting_applied=config.forgetting_enabled,
        delta=config.delta,
    )
    return response, trace


def soundness_check(session: Session, query: Conditional, response: QueryResponse) -> bool:
    """Non-unknown focused answers must match the full-base answer.

    Holds by semi-monotony of System P; exposed for test harnesses.
    """
    if response is QueryResponse.UNKNOWN:
        return True
    return answer(session.base, query) is response
