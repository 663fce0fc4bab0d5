"""Ontology quality metrics over a graph.

Counts and four ratios: relationship richness, attribute richness, class
richness, and average population. Ratios are exact rationals internally and
rendered with three decimals, rounding half up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .errors import MetricsUndefinedError
from .graph import Graph
from .terms import OWL, RDF, RDFS, Iri, Literal

CLASS_TYPES = frozenset({RDFS.Class, OWL.Class})
PROPERTY_TYPES = frozenset({
    RDF.Property,
    OWL.ObjectProperty,
    OWL.DatatypeProperty,
    OWL.AnnotationProperty,
})
META_TYPES = CLASS_TYPES | PROPERTY_TYPES


def _classify(g: Graph) -> tuple[set[Iri], set[Iri], set[Iri]]:
    """Partition typed subjects into (classes, properties, instances)."""
    classes: set[Iri] = set()
    properties: set[Iri] = set()
    for meta in CLASS_TYPES:
        classes.update(t.subject for t in g.match_iter(None, RDF.type, meta))
    for meta in PROPERTY_TYPES:
        properties.update(t.subject for t in g.match_iter(None, RDF.type, meta))
    instances: set[Iri] = set()
    for t in g.match_iter(None, RDF.type, None):
        obj = t.object
        if not isinstance(obj, Iri) or obj in META_TYPES:
            continue
        if t.subject in classes or t.subject in properties:
            continue
        instances.add(t.subject)
    return classes, properties, instances


def count_summary(g: Graph) -> tuple[int, int, int, int]:
    """(statements, classes, properties, instances)."""
    classes, properties, instances = _classify(g)
    return len(g), len(classes), len(properties), len(instances)


def relationship_richness(g: Graph) -> Fraction:
    """Instance-to-instance assertions over all statements."""
    if len(g) == 0:
        raise MetricsUndefinedError("relationship richness is undefined on an empty graph")
    _, _, instances = _classify(g)
    links = sum(
        1
        for t in g
        if t.subject in instances and isinstance(t.object, Iri) and t.object in instances
    )
    return Fraction(links, len(g))


def attribute_richness(g: Graph) -> Fraction:
    """Literal-valued triples on class subjects, per class."""
    classes, _, _ = _classify(g)
    if not classes:
        raise MetricsUndefinedError("attribute richness is undefined without classes")
    count = sum(1 for t in g if t.subject in classes and isinstance(t.object, Literal))
    return Fraction(count, len(classes))


def class_richness(g: Graph) -> Fraction:
    """Share of classes that have at least one instance."""
    classes, _, instances = _classify(g)
    if not classes:
        raise MetricsUndefinedError("class richness is undefined without classes")
    populated = {
        t.object
        for t in g.match_iter(None, RDF.type, None)
        if t.subject in instances and isinstance(t.object, Iri) and t.object in classes
    }
    return Fraction(len(populated), len(classes))


def average_population(g: Graph) -> Fraction:
    """Instances per class."""
    classes, _, instances = _classify(g)
    if not classes:
        raise MetricsUndefinedError("average population is undefined without classes")
    return Fraction(len(instances), len(classes))


@dataclass(frozen=True, slots=True)
class MetricsReport:
    statements: int
    classes: int
    properties: int
    instances: int
    relationship_richness: Fraction | None
    attribute_richness: Fraction | None
    class_richness: Fraction | None
    average_population: Fraction | None

    def to_json(self) -> str:
        def num(r: Fraction | None) -> float | None:
            return None if r is None else float(format_ratio(r))

        payload = {
            "statements": self.statements,
            "classes": self.classes,
            "properties": self.properties,
            "instances": self.instances,
            "relationship_richness": num(self.relationship_richness),
            "attribute_richness": num(self.attribute_richness),
            "class_richness": num(self.class_richness),
            "average_population": num(self.average_population),
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_table(self) -> str:
        rows = [
            ("statements", str(self.statements)),
            ("classes", str(self.classes)),
            ("properties", str(self.properties)),
            ("instances", str(self.instances)),
            ("relationship richness", _display(self.relationship_richness)),
            ("attribute richness", _display(self.attribute_richness)),
            ("class richness", _display(self.class_richness)),
            ("average population", _display(self.average_population)),
        ]
        label_width = max(len(label) for label, _ in rows)
        value_width = max(len(value) for _, value in rows)
        return "".join(
            f"{label.ljust(label_width)}  {value.rjust(value_width)}\n" for label, value in rows
        )


def format_ratio(value: Fraction) -> str:
    """Three decimals, half-up: 5/49 renders as 0.102."""
    scaled = Fraction(value) * 1000
    quotient, remainder = divmod(scaled.numerator, scaled.denominator)
    if 2 * remainder >= scaled.denominator:
        quotient += 1
    return str(Decimal(quotient).scaleb(-3).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def _display(value: Fraction | None) -> str:
    return "n/a" if value is None else format_ratio(value)


def compute_metrics(g: Graph) -> MetricsReport:
    statements, classes, properties, instances = count_summary(g)

    def safe(fn) -> Fraction | None:
        try:
            return fn(g)
        except MetricsUndefinedError:
            return None

    return MetricsReport(
        statements=statements,
        classes=classes,
        properties=properties,
        instances=instances,
        relationship_richness=safe(relationship_richness),
        attribute_richness=safe(attribute_richness),
        class_richness=safe(class_richness),
        average_population=safe(average_population),
    )
