"""Activation machinery: base levels, association, spreading, selection.

The activation of a conditional against a query is

    total(r_i) = base_level(r_i) + sum_j weighting(r_j) * association(r_i, r_j)

where the sum runs over *all* conditionals including r_j = r_i (the unit
self-association term is what the worked fixture values require), the
weighting factor is the minimum triggering value over the conditional's
atoms, and triggering values come from labeling the association network
outward from the query's atoms.

Labeling is synchronous: every frontier atom of an iteration is labeled
against the labeled set frozen at the start of that iteration, with

    label(a) = (sum of labels of a's already-labeled neighbors)
               / (1 + sum of labels of all already-labeled atoms)

and only then does the labeled set advance.  Atoms unreachable from the
query get label 0.  All arithmetic is exact (fractions.Fraction); decimals
exist only in presentation layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping

from .errors import SignatureMismatchError
from .inference import BeliefBase, ZPartition, z_rank
from .logic import Conditional


def initial_base_levels(partition: ZPartition) -> dict[str, Fraction]:
    """Base level 1/(1+Z) per conditional; rank-0 conditionals start at 1."""
    return {cid: Fraction(1, 1 + z_rank(partition, cid)) for cid in sorted(partition.rank_by_id)}


def association(first: Conditional, second: Conditional) -> Fraction:
    """Shared atoms relative to all atoms of the two conditionals.

    Equal conditionals associate with 1 even when their signatures are
    empty (a pair of distinct signature-less conditionals shares nothing
    and gets 0).
    """
    if first == second:
        return Fraction(1)
    a, b = first.atoms(), second.atoms()
    union = a | b
    if not union:
        return Fraction(0)
    return Fraction(len(a & b), len(union))


@dataclass(frozen=True)
class AssociationMatrix:
    """Symmetric degrees of association, unit diagonal, zero-free storage."""

    ids: tuple[str, ...]
    entries: Mapping[tuple[str, str], Fraction]

    def value(self, first: str, second: str) -> Fraction:
        if first not in self.id_set or second not in self.id_set:
            raise KeyError(f"unknown conditional id in ({first!r}, {second!r})")
        if first == second:
            return Fraction(1)
        key = (first, second) if first <= second else (second, first)
        return self.entries.get(key, Fraction(0))

    @cached_property
    def id_set(self) -> frozenset[str]:
        return frozenset(self.ids)


def association_matrix(base: BeliefBase) -> AssociationMatrix:
    entries: dict[tuple[str, str], Fraction] = {}
    for c1, c2 in combinations(base.conditionals, 2):
        value = association(c1, c2)
        if value:
            key = (c1.id, c2.id) if c1.id <= c2.id else (c2.id, c1.id)
            entries[key] = value
    return AssociationMatrix(base.ids, entries)


@dataclass(frozen=True)
class SpreadingNetwork:
    """Undirected atom graph: an edge joins atoms co-occurring in a conditional."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        neighbors: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            neighbors[a].append(b)
            neighbors[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in neighbors.items()}


def build_network(base: BeliefBase) -> SpreadingNetwork:
    edges: set[tuple[str, str]] = set()
    for c in base.conditionals:
        for a, b in combinations(sorted(c.atoms()), 2):
            edges.add((a, b))
    return SpreadingNetwork(tuple(base.signature), frozenset(edges))


@dataclass(frozen=True)
class TriggeringLabels:
    """Triggering value and labeling step per atom; step None = unreachable."""

    tau: Mapping[str, Fraction]
    step: Mapping[str, int | None]


def label_network(network: SpreadingNetwork, query: Conditional) -> TriggeringLabels:
    """Label the network outward from the query's atoms (see module docstring)."""
    vertices = network.vertices
    priming = query.atoms()
    outside = priming - set(vertices)
    if outside:
        raise SignatureMismatchError(f"query atoms outside the network: {sorted(outside)}")

    tau: dict[str, Fraction] = {}
    step: dict[str, int | None] = {}
    for a in vertices:
        if a in priming:
            tau[a] = Fraction(1)
            step[a] = 0

    adjacency = network.adjacency
    labeled = set(tau)
    iteration = 0
    while True:
        frontier = [a for a in vertices if a not in labeled and any(b in labeled for b in adjacency[a])]
        if not frontier:
            break
        iteration += 1
        denominator = 1 + sum(tau[b] for b in labeled)
        fresh = {
            a: sum((tau[b] for b in adjacency[a] if b in labeled), Fraction(0)) / denominator
            for a in frontier
        }
        for a, value in fresh.items():
            tau[a] = value
            step[a] = iteration
        labeled |= set(frontier)

    for a in vertices:
        if a not in labeled:
            tau[a] = Fraction(0)
            step[a] = None
    return TriggeringLabels(
        tau={a: tau[a] for a in vertices},
        step={a: step[a] for a in vertices},
    )


def weighting(labels: TriggeringLabels, conditional: Conditional) -> Fraction:
    """Minimum triggering value over the conditional's atoms.

    A conditional over constants only (empty signature) cannot be
    triggered more than anything; its weighting defaults to 1.
    """
    atoms = conditional.atoms()
    if not atoms:
        return Fraction(1)
    missing = atoms - set(labels.tau)
    if missing:
        raise SignatureMismatchError(f"conditional atoms unlabeled: {sorted(missing)}")
    return min(labels.tau[a] for a in atoms)


@dataclass(frozen=True)
class ProfileEntry:
    base_level: Fraction
    weighting: Fraction
    spreading: Fraction
    total: Fraction


@dataclass(frozen=True)
class ActivationProfile:
    """Per-conditional activation figures, in belief-base order."""

    ids: tuple[str, ...]
    entries: Mapping[str, ProfileEntry]

    def total(self, cid: str) -> Fraction:
        return self.entries[cid].total


def activation_profile(
    base: BeliefBase,
    base_levels: Mapping[str, Fraction],
    assoc: AssociationMatrix,
    labels: TriggeringLabels,
) -> ActivationProfile:
    """Combine base levels with association-weighted spreading activation."""
    ids = base.ids
    if set(base_levels) != set(ids) or set(assoc.ids) != set(ids):
        raise ValueError("base levels / association matrix ids do not match the belief base")

    weights = {c.id: weighting(labels, c) for c in base.conditionals}
    entries: dict[str, ProfileEntry] = {}
    for c in base.conditionals:
        spreading = sum(
            (weights[other] * assoc.value(c.id, other) for other in ids),
            Fraction(0),
        )
        level = base_levels[c.id]
        entries[c.id] = ProfileEntry(
            base_level=level,
            weighting=weights[c.id],
            spreading=spreading,
            total=level + spreading,
        )
    return ActivationProfile(ids, entries)


def select(profile: ActivationProfile, theta: Fraction) -> set[str]:
    """Ids with total activation >= theta (ties select)."""
    if theta < 0:
        raise ValueError(f"threshold must be non-negative, got {theta}")
    return {cid for cid in profile.ids if profile.entries[cid].total >= theta}
