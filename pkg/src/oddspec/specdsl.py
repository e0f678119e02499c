"""Textual language for operational design domain specifications.

Concrete grammar (whitespace separated, ``#`` comments to end of line)::

    expr    := term (("and" term)* | ("or" term)*)
    term    := "not" term | "(" expr ")" | atom
    atom    := IDENT OP literal
    OP      := "==" | "<" | ">" | "<=" | ">="
    literal := NUMBER [IDENT]          # optional unit tag
             | "true" | "false"
             | IDENT                   # enum label

``and`` and ``or`` may not be mixed inside one parenthesis level; use
parentheses to make the intended grouping explicit. ``or`` is sugar:
``a or b`` is rewritten to ``not (not a and not b)`` during parsing, so
the returned tree contains only atoms, negation, and conjunction.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterator, Union

from .errors import (
    PredicateNotApplicableError,
    RealEqualityWarning,
    SpecCheckError,
    SpecParseError,
)
from .taxonomy import (
    IDENTIFIER_RE,
    RESERVED_WORDS,
    BoolType,
    EnumType,
    RealType,
    Taxonomy,
    value_in_domain,
)


class Predicate(enum.Enum):
    EQ = "=="
    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="


ORDERING_PREDICATES = frozenset({Predicate.LT, Predicate.GT, Predicate.LE, Predicate.GE})


@dataclass(frozen=True)
class Atom:
    """One constraint: an attribute compared against a literal."""

    attribute_name: str
    predicate: Predicate
    literal: Union[bool, int, float, str]
    unit: str | None = None


@dataclass(frozen=True)
class Not:
    operand: "SpecAst"


@dataclass(frozen=True)
class And:
    left: "SpecAst"
    right: "SpecAst"


SpecAst = Union[Atom, Not, And]


@dataclass(frozen=True)
class WellFormedSpec:
    """A checked specification, bound to the taxonomy it was checked against."""

    ast: SpecAst
    taxonomy_version: str
    mentioned_attributes: frozenset[str]
    taxonomy: Taxonomy


# --------------------------------------------------------------------------
# Lexer
# --------------------------------------------------------------------------

_KEYWORDS = {"and": "AND", "or": "OR", "not": "NOT", "true": "TRUE", "false": "FALSE"}
_WHITESPACE = " \t\r\n"


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT NUMBER OP LPAREN RPAREN AND OR NOT TRUE FALSE EOF
    text: str
    value: object
    line: int
    column: int


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column = 1, 1
    i = 0
    n = len(text)

    def err(message: str) -> SpecParseError:
        return SpecParseError(message, line, column)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            column = 1
            continue
        if ch in _WHITESPACE:
            i += 1
            column += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_column = line, column
        if ch == "(":
            tokens.append(_Token("LPAREN", "(", None, line, column))
            i += 1
            column += 1
            continue
        if ch == ")":
            tokens.append(_Token("RPAREN", ")", None, line, column))
            i += 1
            column += 1
            continue
        if ch == "=":
            if i + 1 < n and text[i + 1] == "=":
                tokens.append(_Token("OP", "==", Predicate.EQ, line, column))
                i += 2
                column += 2
                continue
            raise err("expected '==' (single '=' is not an operator)")
        if ch in "<>":
            if i + 1 < n and text[i + 1] == "=":
                op = ch + "="
                i += 2
                column += 2
            else:
                op = ch
                i += 1
                column += 1
            tokens.append(_Token("OP", op, Predicate(op), start_line, start_column))
            continue
        if ch == "-" or ch.isdigit():
            j = i + 1 if ch == "-" else i
            if j >= n or not text[j].isdigit():
                raise err("expected a digit after '-'")
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == ".":
                j += 1
                if j >= n or not text[j].isdigit():
                    raise err("expected a digit after the decimal point")
                is_float = True
                while j < n and text[j].isdigit():
                    j += 1
            raw = text[i:j]
            value: object = float(raw) if is_float else int(raw)
            tokens.append(_Token("NUMBER", raw, value, line, column))
            column += j - i
            i = j
            continue
        if "a" <= ch <= "z":
            j = i
            while j < n and ("a" <= text[j] <= "z" or "0" <= text[j] <= "9" or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = _KEYWORDS.get(word, "IDENT")
            tokens.append(_Token(kind, word, word, line, column))
            column += j - i
            i = j
            continue
        raise err(f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", "", None, line, column))
    return tokens


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: _Token | None = None) -> SpecParseError:
        token = token or self.current
        return SpecParseError(message, token.line, token.column)

    def expr(self) -> SpecAst:
        node = self.term()
        connective = None
        while self.current.kind in ("AND", "OR"):
            token = self.advance()
            if connective is not None and token.kind != connective:
                raise self.error(
                    "cannot mix 'and' and 'or' without parentheses", token
                )
            connective = token.kind
            rhs = self.term()
            node = And(node, rhs) if token.kind == "AND" else _or(node, rhs)
        return node

    def term(self) -> SpecAst:
        if self.current.kind == "NOT":
            self.advance()
            return Not(self.term())
        if self.current.kind == "LPAREN":
            self.advance()
            node = self.expr()
            if self.current.kind != "RPAREN":
                raise self.error("expected ')'")
            self.advance()
            return node
        return self.atom()

    def atom(self) -> Atom:
        if self.current.kind != "IDENT":
            raise self.error(f"expected an attribute name, found {self.current.text!r}")
        name = self.advance().value
        if self.current.kind != "OP":
            raise self.error("expected a comparison operator (==, <, >, <=, >=)")
        predicate = self.advance().value
        literal, unit = self.literal()
        return Atom(str(name), predicate, literal, unit)

    def literal(self) -> tuple[object, str | None]:
        token = self.current
        if token.kind == "TRUE":
            self.advance()
            self.forbid_unit()
            return True, None
        if token.kind == "FALSE":
            self.advance()
            self.forbid_unit()
            return False, None
        if token.kind == "NUMBER":
            self.advance()
            unit = None
            if self.current.kind == "IDENT":
                unit = str(self.advance().value)
            return token.value, unit
        if token.kind == "IDENT":
            self.advance()
            self.forbid_unit()
            return str(token.value), None
        raise self.error(f"expected a literal, found {token.text!r}")

    def forbid_unit(self) -> None:
        if self.current.kind == "IDENT":
            raise self.error(
                "a unit tag is only allowed after a numeric literal"
            )


def _or(left: SpecAst, right: SpecAst) -> SpecAst:
    return Not(And(Not(left), Not(right)))


def parse_spec(text: str) -> SpecAst:
    """Parse specification text into an AST of atoms, Not, and And nodes."""
    parser = _Parser(_lex(text))
    if parser.current.kind == "EOF":
        raise parser.error("empty specification")
    node = parser.expr()
    if parser.current.kind != "EOF":
        raise parser.error(f"unexpected trailing input {parser.current.text!r}")
    return node


# --------------------------------------------------------------------------
# AST utilities
# --------------------------------------------------------------------------


def _walk(node: SpecAst) -> Iterator[Atom]:
    """Yield atoms left to right, with repeats."""
    if isinstance(node, Atom):
        yield node
    elif isinstance(node, Not):
        yield from _walk(node.operand)
    elif isinstance(node, And):
        yield from _walk(node.left)
        yield from _walk(node.right)
    else:
        raise TypeError(f"not a spec node: {node!r}")


def atoms(ast: SpecAst) -> list[Atom]:
    """Distinct atoms in first-occurrence order."""
    seen: set[Atom] = set()
    result: list[Atom] = []
    for atom in _walk(ast):
        if atom not in seen:
            seen.add(atom)
            result.append(atom)
    return result


def atom_polarities(ast: SpecAst) -> dict[Atom, set[bool]]:
    """Occurrence polarities per atom: True for even negation depth."""
    polarities: dict[Atom, set[bool]] = {}

    def visit(node: SpecAst, negations: int) -> None:
        if isinstance(node, Atom):
            polarities.setdefault(node, set()).add(negations % 2 == 0)
        elif isinstance(node, Not):
            visit(node.operand, negations + 1)
        else:
            visit(node.left, negations)
            visit(node.right, negations)

    visit(ast, 0)
    return polarities


# --------------------------------------------------------------------------
# Well-formedness
# --------------------------------------------------------------------------


def _check_atom(atom: Atom, taxonomy: Taxonomy) -> None:
    if atom.attribute_name not in taxonomy:
        raise SpecCheckError(f"unknown attribute {atom.attribute_name!r}")
    attribute = taxonomy.attribute(atom.attribute_name)
    kind = attribute.attr_type
    literal = atom.literal

    if isinstance(kind, EnumType):
        if not isinstance(literal, str):
            raise SpecCheckError(
                f"{atom.attribute_name}: expected an enum label, got {literal!r}"
            )
        if atom.predicate in ORDERING_PREDICATES and not kind.ordered:
            raise PredicateNotApplicableError(
                f"{atom.attribute_name}: '{atom.predicate.value}' is not defined "
                f"for an unordered enum"
            )
    elif isinstance(kind, BoolType):
        if not isinstance(literal, bool):
            raise SpecCheckError(
                f"{atom.attribute_name}: expected true or false, got {literal!r}"
            )
        if atom.predicate in ORDERING_PREDICATES:
            raise PredicateNotApplicableError(
                f"{atom.attribute_name}: '{atom.predicate.value}' is not defined "
                f"for a boolean attribute"
            )
    elif isinstance(kind, RealType):
        if isinstance(literal, bool) or not isinstance(literal, (int, float)):
            raise SpecCheckError(
                f"{atom.attribute_name}: expected a number, got {literal!r}"
            )
        if atom.predicate is Predicate.EQ:
            warnings.warn(
                f"{atom.attribute_name}: exact equality on a real-valued "
                f"attribute is fragile",
                RealEqualityWarning,
                stacklevel=3,
            )
    else:  # IntType
        if isinstance(literal, bool) or not isinstance(literal, int):
            raise SpecCheckError(
                f"{atom.attribute_name}: expected an integer, got {literal!r}"
            )

    if not value_in_domain(attribute, literal):
        raise SpecCheckError(
            f"{atom.attribute_name}: literal {_render_literal(literal)} is outside "
            f"the attribute's domain"
        )

    if atom.unit is not None:
        declared = getattr(kind, "unit", None)
        if declared != atom.unit:
            raise SpecCheckError(
                f"{atom.attribute_name}: unit {atom.unit!r} does not match "
                f"declared unit {declared!r}"
            )


def check_spec(ast: SpecAst, taxonomy: Taxonomy) -> WellFormedSpec:
    """Check every atom against the taxonomy (well-formedness is atom-local).

    Raises:
        SpecCheckError: unknown attribute, literal kind mismatch,
            out-of-domain literal, or unit mismatch.
        PredicateNotApplicableError: ordering predicate on a type with no
            defined order.
    """
    all_atoms = atoms(ast)
    for atom in all_atoms:
        _check_atom(atom, taxonomy)
    return WellFormedSpec(
        ast=ast,
        taxonomy_version=taxonomy.version,
        mentioned_attributes=frozenset(a.attribute_name for a in all_atoms),
        taxonomy=taxonomy,
    )


# --------------------------------------------------------------------------
# Canonical serialization
# --------------------------------------------------------------------------


def render_value(value) -> str:
    """Literal syntax for a value: labels bare, booleans lowercase, floats
    always positional decimal (never exponent notation) so the output stays
    inside the grammar."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite literal {value!r} has no syntax")
        text = format(Decimal(repr(value)), "f")
        if "." not in text:
            text += ".0"
        return text
    raise ValueError(f"unsupported literal {value!r}")


_render_literal = render_value


def _require_identifier(text: str, what: str) -> None:
    if not IDENTIFIER_RE.match(text) or text in RESERVED_WORDS:
        raise ValueError(f"{what} {text!r} has no syntax in the language")


def _serialize_atom(atom: Atom) -> str:
    _require_identifier(atom.attribute_name, "attribute name")
    if isinstance(atom.literal, str):
        _require_identifier(atom.literal, "label")
    text = f"{atom.attribute_name} {atom.predicate.value} {render_value(atom.literal)}"
    if atom.unit is not None:
        _require_identifier(atom.unit, "unit")
        text += f" {atom.unit}"
    return text


def _serialize_term(node: SpecAst) -> str:
    if isinstance(node, And):
        return f"({serialize_spec(node)})"
    if isinstance(node, Not):
        return f"not {_serialize_term(node.operand)}"
    return _serialize_atom(node)


def serialize_spec(ast: SpecAst) -> str:
    """Canonical text: ``parse_spec(serialize_spec(x))`` is structurally ``x``.

    Conjunction chains print without parentheses on the left (matching the
    parser's left associativity); any other nesting is parenthesized.
    """
    if isinstance(ast, And):
        left = serialize_spec(ast.left) if isinstance(ast.left, And) else _serialize_term(ast.left)
        return f"{left} and {_serialize_term(ast.right)}"
    return _serialize_term(ast)
