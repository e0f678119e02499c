"""Evaluation of specifications over domain samples.

Verdicts are three-valued (strong Kleene): an atom over an unmeasured
attribute is Unknown; negation maps Unknown to Unknown; conjunction is
False-dominant and True-neutral. Restricted to fully measured samples the
semantics collapses to ordinary two-valued logic.

Attributes a specification never mentions cannot influence its verdict:
silence permits all values (the permissive reading of partial coverage).

Evaluation depends only on the values tuple of a sample, never on its
time or coordinates: the atom language carries no temporal or spatial
operators.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from typing import Iterator

from .domain import UNKNOWN, AttributeValue, Lod, enumerate_od
from .errors import EvaluationError, PredicateNotApplicableError, UnknownValueError
from .specdsl import (
    Atom,
    Not,
    Predicate,
    SpecAst,
    WellFormedSpec,
    atom_polarities,
    atoms,
)
from .taxonomy import BoolType, EnumType, Taxonomy


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @staticmethod
    def from_bool(value: bool) -> "Verdict":
        return Verdict.TRUE if value else Verdict.FALSE


def kleene_not(verdict: Verdict) -> Verdict:
    if verdict is Verdict.TRUE:
        return Verdict.FALSE
    if verdict is Verdict.FALSE:
        return Verdict.TRUE
    return Verdict.UNKNOWN


def kleene_and(left: Verdict, right: Verdict) -> Verdict:
    if left is Verdict.FALSE or right is Verdict.FALSE:
        return Verdict.FALSE
    if left is Verdict.TRUE and right is Verdict.TRUE:
        return Verdict.TRUE
    return Verdict.UNKNOWN


@dataclass(frozen=True)
class Diagnosis:
    """Per-atom breakdown of a verdict.

    ``falsified_atoms`` lists atoms that evaluated False and occur
    positively (under an even number of negations); negatively occurring
    atoms are excluded because blaming them would be misleading.
    ``unknown_atoms`` lists atoms whose attribute was unmeasured.
    """

    verdict: Verdict
    falsified_atoms: tuple[Atom, ...]
    unknown_atoms: tuple[Atom, ...]


_COMPARE = {
    Predicate.EQ: operator.eq,
    Predicate.LT: operator.lt,
    Predicate.GT: operator.gt,
    Predicate.LE: operator.le,
    Predicate.GE: operator.ge,
}


def eval_atom(atom: Atom, lod: Lod, taxonomy: Taxonomy) -> Verdict:
    """Truth value of one constraint against one sample.

    Unknown attribute values yield Verdict.UNKNOWN. Equality is exact
    (labels byte-equal, numbers by numeric equality with int-to-real
    widening); ordering uses numeric order, or label order for enums
    declared ordered.

    Raises:
        EvaluationError: the atom or sample does not fit the taxonomy,
            which signals a spec that was never checked against it.
    """
    if len(lod.values) != len(taxonomy):
        raise EvaluationError(
            f"sample has {len(lod.values)} values but the taxonomy declares "
            f"{len(taxonomy)} attributes"
        )
    try:
        index = taxonomy.index_of(atom.attribute_name)
    except KeyError:
        raise EvaluationError(
            f"unknown attribute {atom.attribute_name!r}; "
            f"was the spec checked against this taxonomy?"
        ) from None
    value = lod.values[index]
    if value is UNKNOWN:
        return Verdict.UNKNOWN

    kind = taxonomy.attributes[index].attr_type
    literal = atom.literal
    if isinstance(kind, EnumType):
        if not isinstance(value, str) or not isinstance(literal, str):
            raise EvaluationError(_kind_mismatch(atom, value))
        if atom.predicate is Predicate.EQ:
            return Verdict.from_bool(value == literal)
        if not kind.ordered:
            raise PredicateNotApplicableError(
                f"{atom.attribute_name}: '{atom.predicate.value}' on an unordered enum"
            )
        try:
            left, right = kind.labels.index(value), kind.labels.index(literal)
        except ValueError:
            raise EvaluationError(_kind_mismatch(atom, value)) from None
        return Verdict.from_bool(_COMPARE[atom.predicate](left, right))
    if isinstance(kind, BoolType):
        if not isinstance(value, bool) or not isinstance(literal, bool):
            raise EvaluationError(_kind_mismatch(atom, value))
        if atom.predicate is not Predicate.EQ:
            raise PredicateNotApplicableError(
                f"{atom.attribute_name}: '{atom.predicate.value}' on a boolean"
            )
        return Verdict.from_bool(value == literal)
    # numeric: RealType or IntType
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise EvaluationError(_kind_mismatch(atom, value))
    if isinstance(literal, bool) or not isinstance(literal, (int, float)):
        raise EvaluationError(_kind_mismatch(atom, value))
    return Verdict.from_bool(_COMPARE[atom.predicate](value, literal))


def _kind_mismatch(atom: Atom, value: AttributeValue) -> str:
    return (
        f"{atom.attribute_name}: cannot compare sample value {value!r} with "
        f"literal {atom.literal!r}; was the spec checked against this taxonomy?"
    )


def eval_spec(spec: WellFormedSpec, lod: Lod) -> Verdict:
    """Verdict of a whole specification by structural recursion."""
    if len(lod.values) != len(spec.taxonomy):
        raise EvaluationError(
            f"sample has {len(lod.values)} values but the taxonomy declares "
            f"{len(spec.taxonomy)} attributes"
        )
    return _eval_node(spec.ast, lod, spec.taxonomy)


def _eval_node(node: SpecAst, lod: Lod, taxonomy: Taxonomy) -> Verdict:
    if isinstance(node, Atom):
        return eval_atom(node, lod, taxonomy)
    if isinstance(node, Not):
        return kleene_not(_eval_node(node.operand, lod, taxonomy))
    return kleene_and(
        _eval_node(node.left, lod, taxonomy),
        _eval_node(node.right, lod, taxonomy),
    )


def in_odd(spec: WellFormedSpec, lod: Lod) -> bool:
    """Design-domain membership for a fully measured sample.

    Raises:
        UnknownValueError: a mentioned attribute is Unknown; membership is
            then undefined, not false.
    """
    for name in spec.mentioned_attributes:
        if lod.values[spec.taxonomy.index_of(name)] is UNKNOWN:
            raise UnknownValueError(
                f"attribute {name!r} is unmeasured; membership is undefined"
            )
    return eval_spec(spec, lod) is Verdict.TRUE


def enumerate_odd(
    taxonomy: Taxonomy, spec: WellFormedSpec
) -> Iterator[tuple[AttributeValue, ...]]:
    """The satisfying subset of the full domain, in enumeration order.

    Atoms are time/space-independent, so membership reduces to filtering
    the finite enumeration by verdict.
    """
    if spec.taxonomy_version != taxonomy.version:
        raise EvaluationError(
            f"spec was checked against taxonomy version "
            f"{spec.taxonomy_version!r}, not {taxonomy.version!r}"
        )
    for values in enumerate_od(taxonomy):
        lod = Lod(t=0.0, x=0.0, y=0.0, values=values)
        if eval_spec(spec, lod) is Verdict.TRUE:
            yield values


def diagnose(spec: WellFormedSpec, lod: Lod) -> Diagnosis:
    """Evaluate and name the atoms responsible for a non-True verdict."""
    verdict = eval_spec(spec, lod)
    polarities = atom_polarities(spec.ast)
    falsified = []
    unknown = []
    for atom in atoms(spec.ast):
        atom_verdict = eval_atom(atom, lod, spec.taxonomy)
        if atom_verdict is Verdict.FALSE and True in polarities[atom]:
            falsified.append(atom)
        elif atom_verdict is Verdict.UNKNOWN:
            unknown.append(atom)
    return Diagnosis(
        verdict=verdict,
        falsified_atoms=tuple(falsified),
        unknown_atoms=tuple(unknown),
    )
