"""The presentation file format and canonical JSON serialization.

A presentation document is a UTF-8 JSON object::

    {
      "field": "Q" | {"Fp": p},
      "dim": n,
      "ops": [{"name": str, "arity": k, "tensor": nested scalar strings}],
      "unary": [names of the arity-1 operations],
      "group": optional {"order": m, "mult": table,
                          "action": [per-element matrices]},
      "labels": optional [basis names]
    }

Scalars are always strings ("a/b" or "a" over the rationals, "k mod p"
over a prime field), never JSON numbers, so exact values survive the
round trip. Serialization is canonical: sorted keys, two-space indent,
reduced scalars, trailing newline. Parsing followed by serialization is
therefore byte-stable, and reports built from the same data are
byte-identical across runs.
"""

from __future__ import annotations

import json

from .algebra import AlgebraPresentation, MultilinearOp
from .equivariant import GroupAction
from .errors import ValidationError
from .fields import Field, field_from_description
from .groups import FiniteGroup
from .linalg import Matrix


def canonical_json(document) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _scalar_tree_to_strings(field: Field, node, depth: int):
    if depth == 0:
        return field.format(node)
    return [_scalar_tree_to_strings(field, child, depth - 1) for child in node]


def _scalar_tree_from_strings(field: Field, node, depth: int, where: str):
    if depth == 0:
        if not isinstance(node, str):
            raise ValidationError(f"{where}: scalar must be a string, got {node!r}")
        return field.parse(node)
    if not isinstance(node, list):
        raise ValidationError(f"{where}: expected a nested array")
    return tuple(_scalar_tree_from_strings(field, child, depth - 1, where) for child in node)


def matrix_to_lists(m: Matrix) -> list:
    return [[m.field.format(x) for x in row] for row in m.entries]


def matrix_from_lists(field: Field, rows, dim: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != dim or \
            any(not isinstance(r, list) or len(r) != dim for r in rows):
        raise ValidationError(f"{where}: matrix must be {dim}x{dim}")
    return Matrix.from_rows(field, [[field.parse(x) for x in row] for row in rows])


def presentation_to_document(algebra: AlgebraPresentation,
                             action: GroupAction | None = None) -> dict:
    field = algebra.field
    doc = {
        "field": "Q" if field.characteristic == 0 else {"Fp": field.characteristic},
        "dim": algebra.dim,
        "ops": [
            {
                "name": op.name,
                "arity": op.arity,
                "tensor": _scalar_tree_to_strings(field, op.tensor, op.arity + 1),
            }
            for op in algebra.ops
        ],
        "unary": sorted(op.name for op in algebra.unary_ops),
    }
    if algebra.labels is not None:
        doc["labels"] = list(algebra.labels)
    if action is not None:
        doc["group"] = {
            "order": action.group.order,
            "mult": [list(row) for row in action.group.mult],
            "action": [matrix_to_lists(m) for m in action.matrices],
        }
    return doc


def document_to_presentation(doc) -> tuple[AlgebraPresentation, GroupAction | None]:
    if not isinstance(doc, dict):
        raise ValidationError("presentation document must be a JSON object")
    for key in ("field", "dim", "ops", "unary"):
        if key not in doc:
            raise ValidationError(f"presentation document is missing {key!r}")
    known = {"field", "dim", "ops", "unary", "group", "labels"}
    stray = set(doc) - known
    if stray:
        raise ValidationError(f"unknown document keys {sorted(stray)}")
    field = field_from_description(doc["field"])
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ValidationError(f"bad dimension {dim!r}")
    if not isinstance(doc["ops"], list):
        raise ValidationError("'ops' must be an array")
    ops = []
    for i, entry in enumerate(doc["ops"]):
        where = f"ops[{i}]"
        if not isinstance(entry, dict) or not {"name", "arity", "tensor"} <= set(entry):
            raise ValidationError(f"{where}: needs name, arity, and tensor")
        name, arity = entry["name"], entry["arity"]
        if not isinstance(name, str) or not isinstance(arity, int) or arity < 1:
            raise ValidationError(f"{where}: bad name or arity")
        tensor = _scalar_tree_from_strings(field, entry["tensor"], arity + 1, where)
        ops.append(MultilinearOp(name, arity, tensor))
    labels = None
    if "labels" in doc:
        if not isinstance(doc["labels"], list) or \
                any(not isinstance(x, str) for x in doc["labels"]):
            raise ValidationError("'labels' must be an array of strings")
        labels = tuple(doc["labels"])
    algebra = AlgebraPresentation(field, dim, tuple(ops), labels)
    declared = doc["unary"]
    if not isinstance(declared, list) or sorted(declared) != sorted(
            op.name for op in algebra.unary_ops):
        raise ValidationError("'unary' must list exactly the arity-1 operation names")
    action = None
    if "group" in doc:
        g = doc["group"]
        if not isinstance(g, dict) or not {"order", "mult", "action"} <= set(g):
            raise ValidationError("'group' needs order, mult, and action")
        group = FiniteGroup.from_table(g["mult"])
        if group.order != g["order"]:
            raise ValidationError("group order does not match its table")
        mats = g["action"]
        if not isinstance(mats, list) or len(mats) != group.order:
            raise ValidationError("'action' must hold one matrix per group element")
        matrices = tuple(matrix_from_lists(field, m, dim, f"action[{i}]")
                         for i, m in enumerate(mats))
        action = GroupAction(algebra, group, matrices)
    return algebra, action


def parse_document_text(text: str, source: str = "<input>") -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(
            f"{source}: malformed JSON at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err


def serialize_presentation(algebra: AlgebraPresentation,
                           action: GroupAction | None = None) -> str:
    return canonical_json(presentation_to_document(algebra, action))


def subspace_to_lists(subspace) -> list:
    fmt = subspace.field.format
    return [[fmt(x) for x in row] for row in subspace.basis]
