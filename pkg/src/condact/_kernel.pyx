# cython: language_level=3
"""Compiled world-set kernel.

Evaluates postfix formula programs over all 2**n_atoms worlds at once on
blocks of 64 worlds, writing into a preallocated stack of uint64 buffers.
Returns the same arbitrary-precision bitset integers as the pure backend.
"""

import sys

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t

from ._ops import OP_ATOM, OP_NOT, OP_AND, OP_OR, OP_TRUE, OP_FALSE

BACKEND = "compiled"

cdef int C_ATOM = OP_ATOM
cdef int C_NOT = OP_NOT
cdef int C_AND = OP_AND
cdef int C_OR = OP_OR
cdef int C_TRUE = OP_TRUE
cdef int C_FALSE = OP_FALSE

# within-block patterns for atoms occupying index bits 0..5
cdef uint64_t[6] PATTERN
PATTERN[0] = <uint64_t>0xAAAAAAAAAAAAAAAAULL
PATTERN[1] = <uint64_t>0xCCCCCCCCCCCCCCCCULL
PATTERN[2] = <uint64_t>0xF0F0F0F0F0F0F0F0ULL
PATTERN[3] = <uint64_t>0xFF00FF00FF00FF00ULL
PATTERN[4] = <uint64_t>0xFFFF0000FFFF0000ULL
PATTERN[5] = <uint64_t>0xFFFFFFFF00000000ULL

cdef uint64_t ALL_ONES = <uint64_t>0xFFFFFFFFFFFFFFFFULL


def model_bitset(program, int n_atoms):
    """Evaluate a postfix formula program over all 2**n_atoms worlds."""
    if n_atoms < 0 or n_atoms > 30:
        raise ValueError(f"n_atoms out of range: {n_atoms}")

    cdef Py_ssize_t nbits = (<Py_ssize_t>1) << n_atoms
    cdef Py_ssize_t nblocks = nbits >> 6
    if nblocks == 0:
        nblocks = 1
    cdef uint64_t tail_mask = ALL_ONES
    if n_atoms < 6:
        tail_mask = ((<uint64_t>1) << nbits) - 1

    cdef list ops = list(program)
    cdef Py_ssize_t plen = len(ops)

    # maximum stack depth needed by the program
    cdef Py_ssize_t depth = 0, max_depth = 0, i = 0
    cdef int op
    while i < plen:
        op = ops[i]
        if op == C_ATOM:
            i += 1
            depth += 1
        elif op == C_TRUE or op == C_FALSE:
            depth += 1
        elif op == C_AND or op == C_OR:
            depth -= 1
        elif op != C_NOT:
            raise ValueError(f"unknown opcode {op}")
        if depth <= 0:
            raise ValueError("malformed formula program")
        if depth > max_depth:
            max_depth = depth
        i += 1
    if depth != 1:
        raise ValueError("malformed formula program")

    cdef uint64_t *buf = <uint64_t *>PyMem_Malloc(max_depth * nblocks * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()

    cdef Py_ssize_t sp = 0, b
    cdef uint64_t *top
    cdef uint64_t *below
    cdef uint64_t pat
    cdef int j, w
    try:
        i = 0
        while i < plen:
            op = ops[i]
            if op == C_ATOM:
                i += 1
                j = ops[i]
                if j < 0 or j >= n_atoms:
                    raise ValueError(f"atom index {j} out of range")
                w = n_atoms - 1 - j
                top = buf + sp * nblocks
                if w < 6:
                    pat = PATTERN[w] & tail_mask
                    for b in range(nblocks):
                        top[b] = pat
                else:
                    for b in range(nblocks):
                        top[b] = ALL_ONES if (b >> (w - 6)) & 1 else 0
                sp += 1
            elif op == C_NOT:
                top = buf + (sp - 1) * nblocks
                for b in range(nblocks):
                    top[b] = ~top[b]
                top[nblocks - 1] &= tail_mask
            elif op == C_AND:
                sp -= 1
                top = buf + sp * nblocks
                below = buf + (sp - 1) * nblocks
                for b in range(nblocks):
                    below[b] &= top[b]
            elif op == C_OR:
                sp -= 1
                top = buf + sp * nblocks
                below = buf + (sp - 1) * nblocks
                for b in range(nblocks):
                    below[b] |= top[b]
            elif op == C_TRUE:
                top = buf + sp * nblocks
                for b in range(nblocks):
                    top[b] = ALL_ONES
                top[nblocks - 1] &= tail_mask
                sp += 1
            else:  # C_FALSE
                top = buf + sp * nblocks
                for b in range(nblocks):
                    top[b] = 0
                sp += 1
            i += 1

        if sys.byteorder == "little":
            raw = PyBytes_FromStringAndSize(<char *>buf, nblocks * sizeof(uint64_t))
            return int.from_bytes(raw, "little")
        result = 0
        for b in range(nblocks):
            result |= (<object>buf[b]) << (64 * b)
        return result
    finally:
        PyMem_Free(buf)
