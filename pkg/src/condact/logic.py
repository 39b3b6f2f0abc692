"""Propositional core: signatures, formulas, worlds, conditionals, rankings.

A world is a total truth assignment over a fixed signature.  Worlds are
identified with an integer index so that enumeration order (and therefore
every "first witness" choice elsewhere) is well-defined: the j-th atom of
the signature occupies bit ``len(sig)-1-j`` of the index, i.e. worlds
enumerate in truth-table order with the first atom varying slowest and
the all-false world first.

Material implication and the nullary constants are not AST nodes of their
own beyond ``Const``: ``implies(a, b)`` builds ``!a || b`` at construction
time, keeping evaluation to the {atom, not, and, or, const} core.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import CapacityError, SignatureMismatchError

#: Largest atom count for which exhaustive world enumeration is permitted.
MAX_ENUM_ATOMS = 24

#: Rank of an unsatisfiable formula (min over the empty set of worlds).
INF = math.inf


@dataclass(frozen=True)
class Signature:
    """Ordered, duplicate-free collection of atom names."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        seen = set()
        for name in self.atoms:
            if not name:
                raise ValueError("atom names must be non-empty")
            if name in seen:
                raise ValueError(f"duplicate atom {name!r} in signature")
            seen.add(name)

    @classmethod
    def of(cls, *names: str) -> Signature:
        return cls(tuple(names))

    def index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise SignatureMismatchError(f"atom {name!r} not in signature {self.atoms}") from None

    def restrict(self, names) -> Signature:
        """Sub-signature keeping this signature's order."""
        keep = set(names)
        return Signature(tuple(a for a in self.atoms if a in keep))

    def extend(self, names) -> Signature:
        """Append the given atoms (in their given order) when not already present."""
        extra = tuple(a for a in names if a not in self.atoms)
        return Signature(self.atoms + extra) if extra else self

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __contains__(self, name: object) -> bool:
        return name in self.atoms


class Formula:
    """Abstract syntax tree over atoms, negation, conjunction, disjunction, constants."""

    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        return frozenset(atoms_in_order(self))

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    """Material implication, normalized to ``!a || b`` at construction."""
    return Or(Not(antecedent), consequent)


def atoms_in_order(formula: Formula) -> tuple[str, ...]:
    """Atom names in left-to-right first-mention order."""
    out: list[str] = []
    seen: set[str] = set()

    def walk(f: Formula):
        match f:
            case Atom(name):
                if name not in seen:
                    seen.add(name)
                    out.append(name)
            case Not(g):
                walk(g)
            case And(left, right) | Or(left, right):
                walk(left)
                walk(right)
            case Const():
                pass
            case _:
                raise TypeError(f"not a formula node: {f!r}")

    walk(formula)
    return tuple(out)


def format_formula(formula: Formula) -> str:
    """Render a formula in the grammar the parser accepts.

    Precedence (low to high): ``||`` < ``&&`` < ``!``; parentheses are
    emitted only where a child binds looser than its context, so
    ``parse(format_formula(f)) == f`` structurally.
    """

    def prec(f: Formula) -> int:
        match f:
            case Or():
                return 1
            case And():
                return 2
            case Not():
                return 3
            case _:
                return 4

    def render(f: Formula, context: int) -> str:
        match f:
            case Atom(name):
                text = name
            case Const(value):
                text = "true" if value else "false"
            case Not(g):
                text = "!" + render(g, 3)
            case And(left, right):
                # left-associative: right child needs parens at equal level
                text = render(left, 2) + " && " + render(right, 3)
            case Or(left, right):
                text = render(left, 1) + " || " + render(right, 2)
            case _:
                raise TypeError(f"not a formula node: {f!r}")
        return "(" + text + ")" if prec(f) < context else text

    return render(formula, 0)


@dataclass(frozen=True)
class World:
    """Total truth assignment, keyed by its enumeration index."""

    signature: Signature
    index: int

    def value(self, atom: str) -> bool:
        j = self.signature.index(atom)
        return bool((self.index >> (len(self.signature) - 1 - j)) & 1)

    @classmethod
    def from_assignment(cls, signature: Signature, assignment: Mapping[str, bool]) -> World:
        missing = [a for a in signature if a not in assignment]
        if missing:
            raise SignatureMismatchError(f"assignment missing atoms: {missing}")
        index = 0
        for a in signature:
            index = (index << 1) | int(bool(assignment[a]))
        return cls(signature, index)

    def as_dict(self) -> dict[str, bool]:
        return {a: self.value(a) for a in self.signature}

    def __str__(self) -> str:
        return " ".join(a if self.value(a) else "!" + a for a in self.signature) or "<empty>"


def evaluate(formula: Formula, world: World) -> bool:
    """Standard truth-functional evaluation of ``formula`` at ``world``."""
    match formula:
        case Atom(name):
            return world.value(name)
        case Not(g):
            return not evaluate(g, world)
        case And(left, right):
            return evaluate(left, world) and evaluate(right, world)
        case Or(left, right):
            return evaluate(left, world) or evaluate(right, world)
        case Const(value):
            return value
        case _:
            raise TypeError(f"not a formula node: {formula!r}")


def enumerate_worlds(signature: Signature, cap: int = MAX_ENUM_ATOMS) -> Iterator[World]:
    """All ``2**len(signature)`` worlds in index order.

    Raises CapacityError when the signature exceeds ``cap`` atoms; the
    limit exists because everything downstream is defined by exhaustive
    world semantics and is not meant to scale past desk-sized signatures.
    """
    n = len(signature)
    if n > cap:
        raise CapacityError(f"signature has {n} atoms, enumeration cap is {cap}")
    return (World(signature, i) for i in range(1 << n))


@dataclass(frozen=True)
class Conditional:
    """Defeasible rule ``(consequent | antecedent)``: if A then usually B."""

    antecedent: Formula
    consequent: Formula
    id: str = "q"

    def atoms(self) -> frozenset[str]:
        return self.antecedent.atoms() | self.consequent.atoms()

    def atoms_in_order(self) -> tuple[str, ...]:
        # consequent first: mirrors the (B|A) surface syntax
        out = list(atoms_in_order(self.consequent))
        out += [a for a in atoms_in_order(self.antecedent) if a not in out]
        return tuple(out)

    def negated(self) -> Conditional:
        return Conditional(self.antecedent, Not(self.consequent), self.id)

    def __str__(self) -> str:
        return f"({format_formula(self.consequent)} | {format_formula(self.antecedent)})"


def verifies(world: World, conditional: Conditional) -> bool:
    """True iff the world satisfies A && B."""
    return evaluate(conditional.antecedent, world) and evaluate(conditional.consequent, world)


def falsifies(world: World, conditional: Conditional) -> bool:
    """True iff the world satisfies A && !B."""
    return evaluate(conditional.antecedent, world) and not evaluate(conditional.consequent, world)


@dataclass(frozen=True, eq=False)
class RankingFunction:
    """Implausibility ranking over all worlds of a signature (test oracle).

    Ranks are non-negative integers or ``INF``; at least one world must
    have rank 0 (normalization).
    """

    signature: Signature
    ranks: Mapping[World, int | float]

    def __post_init__(self):
        worlds = list(enumerate_worlds(self.signature))
        missing = [w for w in worlds if w not in self.ranks]
        if missing:
            raise ValueError(f"ranking function not total: {len(missing)} worlds unranked")
        for w, r in self.ranks.items():
            if r != INF and (r < 0 or r != int(r)):
                raise ValueError(f"rank of {w} must be a non-negative integer or INF, got {r}")
        if not any(r == 0 for r in self.ranks.values()):
            raise ValueError("ranking function must assign rank 0 to some world")


def rank_of_formula(ranking: RankingFunction, formula: Formula):
    """Minimal rank over the formula's models; INF when unsatisfiable."""
    best = INF
    for world, rank in ranking.ranks.items():
        if rank < best and evaluate(formula, world):
            best = rank
    return best


def accepts(ranking: RankingFunction, conditional: Conditional) -> bool:
    """Acceptance of (B|A): rank(A && B) < rank(A && !B), or A unsatisfiable."""
    a = conditional.antecedent
    rank_a = rank_of_formula(ranking, a)
    if rank_a == INF:
        return True
    rank_ab = rank_of_formula(ranking, And(a, conditional.consequent))
    rank_anb = rank_of_formula(ranking, And(a, Not(conditional.consequent)))
    return rank_ab < rank_anb
