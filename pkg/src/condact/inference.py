"""Tolerance, Z-partitions, consistency, System P querying, and the
syntactic focus baseline.

Consistency is decided constructively: the greedy tolerance partition
either succeeds (yielding Z-ranks) or gets stuck on a non-empty remainder,
which is reported.  System P entailment of a query (B|A) is the classic
inconsistency reduction: it holds iff the base extended with (!B|A) admits
no tolerance partition.

Two deliberate refinements of the bare definitions:

* Conditionals with an unsatisfiable antecedent are accepted by every
  ranking function yet can never be verified, so a literal tolerance test
  would falsely flag them.  They are segregated as ``vacuous`` with Z-rank
  0 and never block consistency.
* Dually, a *query* with an unsatisfiable antecedent is accepted by every
  ranking model, so ``system_p_infers`` answers True for it directly; the
  inconsistency reduction is used for all satisfiable antecedents.

Internally, partition existence is checked over the signature restricted
to the atoms actually occurring in the conditionals involved (tolerance is
invariant under padding with unconstrained atoms).  The witness-producing
``tolerates`` keeps the caller-visible signature so the returned world is
the first one in the documented enumeration order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import modelsets
from .errors import InconsistentBaseError
from .logic import MAX_ENUM_ATOMS, Conditional, Signature, World, atoms_in_order


@dataclass(frozen=True)
class BeliefBase:
    """Ordered set of identified conditionals over a signature."""

    signature: Signature
    conditionals: tuple[Conditional, ...]

    def __post_init__(self):
        seen = set()
        for c in self.conditionals:
            if c.id in seen:
                raise ValueError(f"duplicate conditional id {c.id!r}")
            seen.add(c.id)
            for atom in c.atoms():
                if atom not in self.signature:
                    raise ValueError(f"conditional {c.id!r} uses atom {atom!r} outside signature")

    @cached_property
    def by_id(self) -> dict[str, Conditional]:
        return {c.id: c for c in self.conditionals}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.conditionals)

    def restrict(self, ids: Iterable[str]) -> BeliefBase:
        """Sub-base with the given ids, preserving order and signature."""
        keep = set(ids)
        unknown = keep - set(self.ids)
        if unknown:
            raise KeyError(f"unknown conditional ids: {sorted(unknown)}")
        return BeliefBase(self.signature, tuple(c for c in self.conditionals if c.id in keep))

    def order_ids(self, ids: Iterable[str]) -> tuple[str, ...]:
        """The given ids sorted into base order."""
        keep = set(ids)
        return tuple(i for i in self.ids if i in keep)

    def __len__(self) -> int:
        return len(self.conditionals)

    def __iter__(self):
        return iter(self.conditionals)

    @cached_property
    def _partition_outcome(self):
        try:
            return z_partition(self), None
        except InconsistentBaseError as exc:
            return None, exc


class QueryResponse(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ZPartition:
    """Greedy tolerance partition; layer index = Z-rank.

    ``vacuous`` holds conditionals with unsatisfiable antecedent (rank 0
    by convention, see module docstring).
    """

    layers: tuple[tuple[str, ...], ...]
    vacuous: tuple[str, ...] = ()

    @cached_property
    def rank_by_id(self) -> dict[str, int]:
        ranks = {cid: i for i, layer in enumerate(self.layers) for cid in layer}
        ranks.update({cid: 0 for cid in self.vacuous})
        return ranks

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(self.rank_by_id)


def z_rank(partition: ZPartition, conditional_id: str) -> int:
    """Layer index of the conditional; vacuous conditionals rank 0."""
    try:
        return partition.rank_by_id[conditional_id]
    except KeyError:
        raise KeyError(f"unknown conditional id {conditional_id!r}") from None


class _Stuck(Exception):
    def __init__(self, remainder: tuple[int, ...]):
        self.remainder = remainder


def _enum_signature(signature: Signature, conditionals: Sequence[Conditional]) -> Signature:
    used: set[str] = set()
    for c in conditionals:
        used |= c.atoms()
    return signature.restrict(used)


def _partition_positions(conditionals: Sequence[Conditional], sig: Signature, cap: int):
    """Greedy layering by position index over the restricted signature.

    Returns (layers, vacuous) as tuples of positions, or raises _Stuck with
    the positions of a remainder in which nothing is tolerated.
    """
    full = modelsets.full_mask(sig, cap)
    verify = [modelsets.verify_mask(c, sig, cap) for c in conditionals]
    falsify = [modelsets.falsify_mask(c, sig, cap) for c in conditionals]
    vacuous = tuple(
        i for i, c in enumerate(conditionals) if not modelsets.is_satisfiable(c.antecedent, sig, cap)
    )
    remaining = [i for i in range(len(conditionals)) if i not in set(vacuous)]

    layers: list[tuple[int, ...]] = []
    while remaining:
        allowed = full
        for i in remaining:
            allowed &= ~falsify[i]
        layer = tuple(i for i in remaining if verify[i] & allowed)
        if not layer:
            raise _Stuck(tuple(remaining))
        remaining = [i for i in remaining if i not in set(layer)]
        layers.append(layer)
    return tuple(layers), vacuous


def z_partition(base: BeliefBase, cap: int = MAX_ENUM_ATOMS) -> ZPartition:
    """Greedy maximal tolerance partition of the base.

    Raises InconsistentBaseError (carrying the stuck remainder ids) when
    some non-empty remainder contains no tolerated conditional.
    """
    sig = _enum_signature(base.signature, base.conditionals)
    try:
        layers, vacuous = _partition_positions(base.conditionals, sig, cap)
    except _Stuck as stuck:
        raise InconsistentBaseError(tuple(base.conditionals[i].id for i in stuck.remainder)) from None
    return ZPartition(
        layers=tuple(tuple(base.conditionals[i].id for i in layer) for layer in layers),
        vacuous=tuple(base.conditionals[i].id for i in vacuous),
    )


def is_consistent(base: BeliefBase) -> bool:
    """True iff the base admits a tolerance partition."""
    return base._partition_outcome[1] is None


def cached_z_partition(base: BeliefBase) -> ZPartition:
    """Like z_partition but memoized on the (immutable) base."""
    partition, failure = base._partition_outcome
    if failure is not None:
        raise failure
    return partition


def tolerates(base: BeliefBase, conditional: Conditional, cap: int = MAX_ENUM_ATOMS) -> World | None:
    """First world (in enumeration order) verifying ``conditional`` while
    falsifying nothing in ``base``, or None when there is none.

    The enumeration signature is the base's, extended by any further atoms
    of the conditional in their first-mention order.
    """
    sig = base.signature.extend(conditional.atoms_in_order())
    mask = modelsets.verify_mask(conditional, sig, cap)
    for c in base.conditionals:
        if not mask:
            break
        mask &= ~modelsets.falsify_mask(c, sig, cap)
    return modelsets.first_world(mask, sig)


def _extension_consistent(base: BeliefBase, extra: Conditional, cap: int) -> bool:
    conditionals = base.conditionals + (extra,)
    sig = _enum_signature(base.signature.extend(extra.atoms_in_order()), conditionals)
    try:
        _partition_positions(conditionals, sig, cap)
        return True
    except _Stuck:
        return False


def system_p_infers(base: BeliefBase, query: Conditional, cap: int = MAX_ENUM_ATOMS) -> bool:
    """System P entailment of (B|A) via the inconsistency reduction."""
    if not is_consistent(base):
        raise base._partition_outcome[1]
    antecedent_sig = Signature(atoms_in_order(query.antecedent))
    if not modelsets.is_satisfiable(query.antecedent, antecedent_sig, cap):
        return True  # accepted by every ranking model (rank(A) is infinite)
    return not _extension_consistent(base, query.negated(), cap)


def answer(base: BeliefBase, query: Conditional, cap: int = MAX_ENUM_ATOMS) -> QueryResponse:
    """Three-valued response: yes / no / unknown."""
    if system_p_infers(base, query, cap):
        return QueryResponse.YES
    if system_p_infers(base, query.negated(), cap):
        return QueryResponse.NO
    return QueryResponse.UNKNOWN


def direct_focus(base: BeliefBase, query: Conditional) -> set[str]:
    """Ids of conditionals sharing at least one atom with the query."""
    q_atoms = query.atoms()
    return {c.id for c in base.conditionals if c.atoms() & q_atoms}


def iterated_focus(base: BeliefBase, query: Conditional, i: int) -> set[str]:
    """i-th focus: expand the direct focus i times by signature overlap.

    Each round adds every conditional sharing an atom with some previously
    focused conditional (the published displayed definition reuses its
    bound variable and would never grow; this is the intended reading).
    Reaches a fixed point after at most len(base) rounds.
    """
    if i < 0:
        raise ValueError("focus index must be non-negative")
    focused = direct_focus(base, query)
    for _ in range(i):
        reached = set()
        for cid in focused:
            reached |= base.by_id[cid].atoms()
        grown = focused | {c.id for c in base.conditionals if c.atoms() & reached}
        if grown == focused:
            break
        focused = grown
    return focused
