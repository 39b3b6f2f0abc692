"""Text formats: formulas, conditionals, belief-base files, session files.

Formula grammar (precedence low to high, whitespace insignificant)::

    formula ::= or_expr ( '=>' formula )?          right-associative
    or_expr ::= and_expr ( '||' and_expr )*        left-associative
    and_expr ::= unary ( '&&' unary )*             left-associative
    unary   ::= '!' unary | atom | 'true' | 'false' | '(' formula ')'
    atom    ::= [A-Za-z_][A-Za-z0-9_]*             excluding the keywords

``a => b`` is normalized to ``!a || b`` at parse time.  A conditional is
written consequent-first as ``( B | A )``; the single bar is reserved for
that separator and may not occur inside formulas.

Belief-base files are line-oriented: an optional leading ``sig: a b c``
declaration, then entries ``id: (B|A)`` or bare ``(B|A)`` (auto-ids r1,
r2, ... by entry position), with ``#`` comments and blank lines ignored.
Without a declaration the signature is inferred in first-mention order.

Session files hold one ``id<TAB>numerator/denominator`` record per line,
sorted by id, preceded by ``!``-prefixed header lines carrying the query
counter and any reset events.  Values are exact rationals in lowest terms;
no floating point ever enters the format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SessionFormatError
from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Conditional,
    Formula,
    Not,
    Or,
    Signature,
    format_formula,
    implies,
)
from .memory import ActivationState

_KEYWORDS = {"true", "false"}

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<implies>=>)"
    r"|(?P<or>\|\|)"
    r"|(?P<and>&&)"
    r"|(?P<not>!)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\))"
    r"|(?P<bar>\|)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            if kind == "ident" and value in _KEYWORDS:
                kind = value
            tokens.append(_Token(kind, value, pos))
        pos = match.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _FormulaParser:
    """Recursive descent over a token slice; reports character offsets."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def parse(self) -> Formula:
        formula = self.implication()
        trailing = self.peek()
        if trailing.kind != "eof":
            raise ParseError(f"unexpected {trailing.text!r}", trailing.pos)
        return formula

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "implies":
            self.advance()
            return implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek().kind == "or":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek().kind == "and":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        token = self.peek()
        if token.kind == "not":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        token = self.advance()
        if token.kind == "ident":
            return Atom(token.text)
        if token.kind == "true":
            return TRUE
        if token.kind == "false":
            return FALSE
        if token.kind == "lparen":
            if self.peek().kind == "eof":
                raise ParseError("unbalanced '('", token.pos)
            inner = self.implication()
            closing = self.advance()
            if closing.kind != "rparen":
                # point at the unmatched '(' when the input just ran out
                raise ParseError("expected ')'", closing.pos if closing.kind != "eof" else token.pos)
            return inner
        raise ParseError(
            f"expected a formula, found {token.text!r}" if token.text else "expected a formula",
            token.pos,
        )


def _check_signature(formula: Formula, signature: Signature):
    unknown = sorted(formula.atoms() - set(signature.atoms))
    if unknown:
        raise ParseError(f"unknown atom {unknown[0]!r}")


def parse_formula(text: str, signature: Signature | None = None) -> Formula:
    """Parse a formula; with an explicit signature, reject unknown atoms."""
    if not text.strip():
        raise ParseError("empty formula", 0)
    tokens = _tokenize(text)
    bars = [t for t in tokens if t.kind == "bar"]
    if bars:
        raise ParseError("'|' is not allowed inside formulas", bars[0].pos)
    formula = _FormulaParser(tokens).parse()
    if signature is not None:
        _check_signature(formula, signature)
    return formula


def parse_conditional(text: str, signature: Signature | None = None, id: str = "q") -> Conditional:
    """Parse ``( B | A )``: consequent first, antecedent second."""
    tokens = _tokenize(text)
    if tokens[0].kind != "lparen" or len(tokens) < 2 or tokens[-2].kind != "rparen":
        raise ParseError("conditional must be written as '( consequent | antecedent )'",
                         tokens[0].pos)
    bars = [idx for idx, t in enumerate(tokens) if t.kind == "bar"]
    if not bars:
        raise ParseError("missing '|' separator in conditional", tokens[-1].pos)
    if len(bars) > 1:
        raise ParseError("only one '|' separator is allowed", tokens[bars[1]].pos)
    split = bars[0]
    consequent_tokens = tokens[1:split] + [_Token("eof", "", tokens[split].pos)]
    antecedent_tokens = tokens[split + 1:-2] + [_Token("eof", "", tokens[-2].pos)]
    consequent = _FormulaParser(consequent_tokens).parse()
    antecedent = _FormulaParser(antecedent_tokens).parse()
    conditional = Conditional(antecedent=antecedent, consequent=consequent, id=id)
    if signature is not None:
        _check_signature(conditional.antecedent, signature)
        _check_signature(conditional.consequent, signature)
    return conditional


@dataclass(frozen=True)
class BeliefBaseDocument:
    """Parsed belief-base file: signature plus ordered identified entries."""

    signature: Signature
    conditionals: tuple[Conditional, ...]
    declared_signature: bool


_ID_PREFIX_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*:")
_ATOM_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_belief_base(text: str) -> BeliefBaseDocument:
    """Parse a belief-base file (format in the module docstring)."""
    declared: Signature | None = None
    entries: list[tuple[str | None, str, int]] = []  # (explicit id, conditional text, line no)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        prefix = _ID_PREFIX_RE.match(line)
        if prefix and prefix.group(1) == "sig":
            if declared is not None:
                raise ParseError("duplicate signature declaration", lineno, "line")
            if entries:
                raise ParseError("signature declaration must precede entries", lineno, "line")
            names = line[prefix.end():].split()
            for name in names:
                if not _ATOM_NAME_RE.match(name):
                    raise ParseError(f"invalid atom name {name!r}", lineno, "line")
            try:
                declared = Signature(tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, "line") from None
            continue
        if prefix:
            entries.append((prefix.group(1), line[prefix.end():].strip(), lineno))
        else:
            entries.append((None, line, lineno))

    conditionals: list[Conditional] = []
    ids_seen: dict[str, int] = {}
    mentioned: list[str] = []
    for position, (explicit, body, lineno) in enumerate(entries, start=1):
        cid = explicit if explicit is not None else f"r{position}"
        if cid in ids_seen:
            raise ParseError(f"duplicate id {cid!r} (first used on line {ids_seen[cid]})",
                             lineno, "line")
        ids_seen[cid] = lineno
        try:
            conditional = parse_conditional(body, signature=declared, id=cid)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.args[0]}", lineno, "line") from None
        conditionals.append(conditional)
        for atom in conditional.atoms_in_order():
            if atom not in mentioned:
                mentioned.append(atom)

    signature = declared if declared is not None else Signature(tuple(mentioned))
    return BeliefBaseDocument(
        signature=signature,
        conditionals=tuple(conditionals),
        declared_signature=declared is not None,
    )


def serialize_belief_base(document: BeliefBaseDocument) -> str:
    """Canonical text for a document; parsing it back yields the document."""
    lines = ["sig: " + " ".join(document.signature.atoms)]
    for c in document.conditionals:
        lines.append(f"{c.id}: ({format_formula(c.consequent)} | {format_formula(c.antecedent)})")
    return "\n".join(lines) + "\n"


_RATIONAL_RE = re.compile(r"^(-?\d+)/(-?\d+)$")


def serialize_session(state: ActivationState) -> str:
    """Session text: header lines, then ``id<TAB>p/q`` records sorted by id."""
    lines = [f"! queries {state.query_count}"]
    lines += [f"! reset {token}" for token in state.resets]
    for cid in sorted(state.base_levels):
        value = state.base_levels[cid]
        lines.append(f"{cid}\t{value.numerator}/{value.denominator}")
    return "\n".join(lines) + "\n"


def parse_session(text: str, known_ids=None) -> ActivationState:
    """Parse a session file; with ``known_ids``, reject records outside it."""
    query_count = 0
    resets: list[str] = []
    levels: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("!"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "queries":
                if not parts[1].isdigit():
                    raise SessionFormatError(f"line {lineno}: bad query count {parts[1]!r}")
                query_count = int(parts[1])
            elif len(parts) == 2 and parts[0] == "reset":
                resets.append(parts[1])
            else:
                raise SessionFormatError(f"line {lineno}: unknown header {line!r}")
            continue
        if "\t" not in line:
            raise SessionFormatError(f"line {lineno}: expected 'id<TAB>numerator/denominator'")
        cid, _, value_text = line.partition("\t")
        cid = cid.strip()
        value_text = value_text.strip()
        if not cid:
            raise SessionFormatError(f"line {lineno}: empty conditional id")
        if cid in levels:
            raise SessionFormatError(f"line {lineno}: duplicate record for {cid!r}")
        match = _RATIONAL_RE.match(value_text)
        if not match:
            raise SessionFormatError(f"line {lineno}: malformed rational {value_text!r}")
        numerator, denominator = int(match.group(1)), int(match.group(2))
        if denominator <= 0:
            raise SessionFormatError(f"line {lineno}: denominator must be positive")
        value = Fraction(numerator, denominator)
        if value <= 0:
            raise SessionFormatError(f"line {lineno}: base level must be positive")
        if known_ids is not None and cid not in known_ids:
            raise SessionFormatError(f"line {lineno}: unknown conditional id {cid!r}")
        levels[cid] = value
    return ActivationState(base_levels=levels, query_count=query_count, resets=tuple(resets))
