"""Formula compilation to postfix programs and model-set helpers.

These wrap the kernel so the inference layer can reason about whole model
sets: ``models_of`` returns the bitset of all worlds satisfying a formula,
``first_world`` decodes the lowest set bit back into a :class:`World`
(which is exactly the first world in enumeration order).
"""

from __future__ import annotations

from functools import lru_cache

from . import kernel
from ._ops import OP_AND, OP_ATOM, OP_FALSE, OP_NOT, OP_OR, OP_TRUE
from .errors import CapacityError
from .logic import (
    MAX_ENUM_ATOMS,
    And,
    Atom,
    Conditional,
    Const,
    Formula,
    Not,
    Or,
    Signature,
    World,
)


@lru_cache(maxsize=16384)
def compile_formula(formula: Formula, signature: Signature) -> tuple[int, ...]:
    """Postfix program for ``formula`` over ``signature``'s atom indices."""
    out: list[int] = []

    def emit(f: Formula):
        match f:
            case Atom(name):
                out.append(OP_ATOM)
                out.append(signature.index(name))
            case Not(g):
                emit(g)
                out.append(OP_NOT)
            case And(left, right):
                emit(left)
                emit(right)
                out.append(OP_AND)
            case Or(left, right):
                emit(left)
                emit(right)
                out.append(OP_OR)
            case Const(value):
                out.append(OP_TRUE if value else OP_FALSE)
            case _:
                raise TypeError(f"not a formula node: {f!r}")

    emit(formula)
    return tuple(out)


def _check_cap(signature: Signature, cap: int):
    if len(signature) > cap:
        raise CapacityError(f"signature has {len(signature)} atoms, enumeration cap is {cap}")


def models_of(formula: Formula, signature: Signature, cap: int = MAX_ENUM_ATOMS) -> int:
    """Bitset of worlds satisfying ``formula``."""
    _check_cap(signature, cap)
    return kernel.model_bitset(compile_formula(formula, signature), len(signature))


def full_mask(signature: Signature, cap: int = MAX_ENUM_ATOMS) -> int:
    _check_cap(signature, cap)
    return (1 << (1 << len(signature))) - 1


def verify_mask(conditional: Conditional, signature: Signature, cap: int = MAX_ENUM_ATOMS) -> int:
    """Worlds verifying the conditional (A && B)."""
    return models_of(And(conditional.antecedent, conditional.consequent), signature, cap)


def falsify_mask(conditional: Conditional, signature: Signature, cap: int = MAX_ENUM_ATOMS) -> int:
    """Worlds falsifying the conditional (A && !B)."""
    return models_of(And(conditional.antecedent, Not(conditional.consequent)), signature, cap)


def first_world(mask: int, signature: Signature) -> World | None:
    """World of the lowest set bit, i.e. first in enumeration order."""
    if mask == 0:
        return None
    index = (mask & -mask).bit_length() - 1
    return World(signature, index)


def is_satisfiable(formula: Formula, signature: Signature, cap: int = MAX_ENUM_ATOMS) -> bool:
    return models_of(formula, signature, cap) != 0
