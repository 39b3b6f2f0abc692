"""Pure-Python world-set kernel.

Model sets are arbitrary-precision integers with bit i representing world
index i, so the 2**n-world sweep runs inside CPython's C implementation
of big-int bitwise operators instead of a Python-level loop.
"""

from __future__ import annotations

from ._ops import OP_AND, OP_ATOM, OP_FALSE, OP_NOT, OP_OR, OP_TRUE

BACKEND = "pure"

# Atom masks are periodic; memoize the small ones (large ones are cheap
# relative to the formulas evaluated over them, and caching 2**24-bit
# ints would pin real memory).
_MASK_CACHE: dict[tuple[int, int], int] = {}
_MASK_CACHE_MAX_ATOMS = 16


def _atom_mask(j: int, n_atoms: int) -> int:
    """Bitset of worlds assigning True to the j-th signature atom."""
    key = (j, n_atoms)
    cached = _MASK_CACHE.get(key)
    if cached is not None:
        return cached
    # atom j occupies bit (n-1-j) of the world index: the mask is a
    # repeating block of 2**w zeros followed by 2**w ones
    w = n_atoms - 1 - j
    half = 1 << w
    mask = ((1 << half) - 1) << half
    span = half << 1
    size = 1 << n_atoms
    while span < size:
        mask |= mask << span
        span <<= 1
    if n_atoms <= _MASK_CACHE_MAX_ATOMS:
        _MASK_CACHE[key] = mask
    return mask


def model_bitset(program, n_atoms: int) -> int:
    """Evaluate a postfix formula program over all 2**n_atoms worlds."""
    size = 1 << n_atoms
    full = (1 << size) - 1
    stack: list[int] = []
    i = 0
    length = len(program)
    while i < length:
        op = program[i]
        if op == OP_ATOM:
            i += 1
            stack.append(_atom_mask(program[i], n_atoms))
        elif op == OP_NOT:
            stack[-1] ^= full
        elif op == OP_AND:
            top = stack.pop()
            stack[-1] &= top
        elif op == OP_OR:
            top = stack.pop()
            stack[-1] |= top
        elif op == OP_TRUE:
            stack.append(full)
        elif op == OP_FALSE:
            stack.append(0)
        else:
            raise ValueError(f"unknown opcode {op}")
        i += 1
    if len(stack) != 1:
        raise ValueError("malformed formula program")
    return stack[0]
