"""Attributed DL-Lite reasoning with convex geometric models."""

from ._adl import (
    AdlError,
    Bundle,
    CapExceeded,
    DimensionMismatch,
    Model,
    NegativeRoleInclusionPresent,
    Ontology,
    OntologyTypeError,
    ParseError,
    RestrictionViolated,
    UnsupportedAttribute,
    Unsatisfiable,
    UnvalidatedMap,
    build_model,
    build_temporal_model,
    check_restrictions,
    ground,
    import_bundle,
    import_model,
    is_satisfiable,
    probe,
    temporal_implies,
    translate,
    validate_linear_map,
)


def parse(text: str) -> Ontology:
    return Ontology(text)


def load(path) -> Ontology:
    with open(path, encoding="utf-8") as f:
        return Ontology(f.read())
