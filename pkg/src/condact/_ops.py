"""Opcodes of the postfix formula programs consumed by the kernels.

A program is a flat tuple of ints: OP_ATOM is followed by the atom's
signature index, all other opcodes stand alone.  The stack machine
operates on world bitsets (bit i = truth in world i).
"""

OP_ATOM = 0
OP_NOT = 1
OP_AND = 2
OP_OR = 3
OP_TRUE = 4
OP_FALSE = 5
