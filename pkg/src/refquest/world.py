"""Symbolic task worlds: entities with property/value assignments.

A world is a property schema (ordered properties, each with an ordered
value domain) plus a list of entities. Property values are opaque string
tokens; only equality matters. Several entities may share a `label` (the
instruction-facing name) -- that is what creates referential ambiguity --
but every entity's full assignment must be unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml


class WorldFormatError(Exception):
    """The world-config document is malformed or fails validation."""


@dataclass(frozen=True)
class PropertySchema:
    """Ordered list of (property name, ordered value domain).

    Ordering is stable and significant: it drives deterministic
    tie-breaking throughout the question-selection pipeline.
    """

    properties: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        names = [name for name, _ in self.properties]
        if len(set(names)) != len(names):
            raise WorldFormatError(f"duplicate property names in schema: {names}")
        for name, values in self.properties:
            if not values:
                raise WorldFormatError(f"property {name!r} has an empty domain")
            if len(set(values)) != len(values):
                raise WorldFormatError(f"property {name!r} has duplicate values")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.properties)

    def domain(self, name: str) -> tuple[str, ...]:
        for prop, values in self.properties:
            if prop == name:
                return values
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name: str) -> bool:
        return name in self.names


@dataclass(frozen=True)
class Entity:
    """One object in the world, with a total property assignment."""

    id: str
    label: str
    type_name: str
    assignment: dict[str, str] = field(hash=False)

    def value(self, prop: str) -> str:
        return self.assignment[prop]


@dataclass(frozen=True)
class World:
    schema: PropertySchema
    entities: tuple[Entity, ...]

    def by_id(self, entity_id: str) -> Entity:
        for e in self.entities:
            if e.id == entity_id:
                return e
        raise KeyError(entity_id)

    def with_label(self, label: str) -> tuple[Entity, ...]:
        return tuple(e for e in self.entities if e.label == label)

    @property
    def labels(self) -> tuple[str, ...]:
        seen = []
        for e in self.entities:
            if e.label not in seen:
                seen.append(e.label)
        return tuple(seen)


def validate_world(world: World) -> list[str]:
    """Check all world invariants. Returns a list of violations (empty = ok)."""
    violations = []
    seen_ids = set()
    for e in world.entities:
        if e.id in seen_ids:
            violations.append(f"duplicate entity id {e.id!r}")
        seen_ids.add(e.id)
        missing = [p for p in world.schema.names if p not in e.assignment]
        if missing:
            violations.append(f"entity {e.id!r}: incomplete assignment, missing {missing}")
        for prop, value in e.assignment.items():
            if prop not in world.schema:
                violations.append(f"entity {e.id!r}: unknown property {prop!r}")
            elif value not in world.schema.domain(prop):
                violations.append(
                    f"entity {e.id!r}: value {value!r} not in domain of property {prop!r}"
                )
    names = world.schema.names
    for i, a in enumerate(world.entities):
        for b in world.entities[i + 1:]:
            if all(a.assignment.get(p) == b.assignment.get(p) for p in names):
                violations.append(
                    f"entities {a.id!r} and {b.id!r} share an identical assignment"
                )
    return violations


def load_world(text: str) -> World:
    """Parse a world-config document (YAML) and validate it.

    Top-level keys: `schema` (list of {name, values}) and `entities`
    (list of {id, label, type, assignment}).
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise WorldFormatError(f"world config does not parse: {exc}") from exc
    if not isinstance(doc, dict):
        raise WorldFormatError("world config must be a key/value tree")
    for key in ("schema", "entities"):
        if key not in doc:
            raise WorldFormatError(f"world config missing top-level key {key!r}")

    props = []
    for item in doc["schema"]:
        try:
            props.append((str(item["name"]), tuple(str(v) for v in item["values"])))
        except (TypeError, KeyError) as exc:
            raise WorldFormatError(f"bad schema entry {item!r}: needs name/values") from exc
    schema = PropertySchema(tuple(props))

    if not doc["entities"]:
        raise WorldFormatError("world config has an empty entity list")
    entities = []
    for item in doc["entities"]:
        try:
            entities.append(
                Entity(
                    id=str(item["id"]),
                    label=str(item["label"]),
                    type_name=str(item["type"]),
                    assignment={str(k): str(v) for k, v in item["assignment"].items()},
                )
            )
        except (TypeError, KeyError, AttributeError) as exc:
            raise WorldFormatError(
                f"bad entity entry {item!r}: needs id/label/type/assignment"
            ) from exc

    world = World(schema=schema, entities=tuple(entities))
    violations = validate_world(world)
    if violations:
        raise WorldFormatError("invalid world: " + "; ".join(violations))
    return world


def serialize_world(world: World) -> str:
    """Render a World back into the config-document format (round-trips)."""
    doc = {
        "schema": [
            {"name": name, "values": list(values)}
            for name, values in world.schema.properties
        ],
        "entities": [
            {
                "id": e.id,
                "label": e.label,
                "type": e.type_name,
                "assignment": {p: e.assignment[p] for p in world.schema.names},
            }
            for e in world.entities
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)
