"""Command-line driver.

Subcommands: analyze, radical, decompose, classify, check-ideal, preset.
Input comes from --input FILE (default "-" for stdin) or --preset NAME;
presets over a prime field use a suffix, e.g. ``--preset pointwise3@F5``.
Reports print to stdout as canonical JSON (--output json, the default) or
as an equivalent plain-text rendering (--output text) carrying identical
numeric content.

Exit codes: 0 success, 2 validation error, 3 field-guard error (the
characteristic is too small for the requested computation), 4 internal
certificate error (a guaranteed structural property failed, which should
never happen).

--seed shuffles only the submission order of the internal verification
fan-out; --threads sets its worker count. Neither may influence any
reported value, and the determinism test suite pins that down.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from .algebra import build_operator_algebras, is_ideal, is_ideal_by_definition
from .equivariant import classify_simple_equivariant, is_invariant_ideal, is_simple_equivariant
from .errors import FieldGuardError, TheoremContradictionError, ValidationError
from .fields import GF, QQ
from .fileformat import (canonical_json, matrix_to_lists, parse_document_text,
                         presentation_to_document, document_to_presentation,
                         subspace_to_lists)
from .linalg import Subspace
from .presets import ACTION_PRESETS, build_preset, preset_names
from .structure import is_semisimple, is_simple, minimal_ideal_decomposition, radical


def parallel_map(fn, items, threads: int, seed: int):
    """Apply fn to items, optionally on a thread pool, merging results by
    index so the submission order (shuffled by the seed) cannot leak into
    the output."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    order = list(range(len(items)))
    random.Random(seed).shuffle(order)
    results = [None] * len(items)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(fn, items[i]): i for i in order}
        for fut, i in futures.items():
            results[i] = fut.result()
    return results


def _parse_preset_name(raw: str):
    name, _, fieldpart = raw.partition("@")
    if not fieldpart or fieldpart == "Q":
        field = QQ
    elif fieldpart.startswith("F"):
        try:
            field = GF(int(fieldpart[1:]))
        except ValueError:
            raise ValidationError(f"bad field suffix {fieldpart!r}") from None
    else:
        raise ValidationError(f"bad field suffix {fieldpart!r}")
    return name, field


def _load_algebra(args):
    if args.preset:
        name, field = _parse_preset_name(args.preset)
        built = build_preset(name, field)
        if isinstance(built, tuple):
            return built
        return built, None
    source = args.input or "-"
    if source == "-":
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise ValidationError(f"cannot read {source}: {err}") from err
    return document_to_presentation(parse_document_text(text, source))


def _load_ideal(path: str, algebra) -> Subspace:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err}") from err
    doc = parse_document_text(text, path)
    if not isinstance(doc, dict) or "basis" not in doc or not isinstance(doc["basis"], list):
        raise ValidationError(f"{path}: ideal file needs a 'basis' array of vectors")
    field = algebra.field
    vectors = []
    for i, row in enumerate(doc["basis"]):
        if not isinstance(row, list) or len(row) != algebra.dim:
            raise ValidationError(f"{path}: basis[{i}] must be a vector of length {algebra.dim}")
        vectors.append([field.parse(x) for x in row])
    return Subspace.from_vectors(field, algebra.dim, vectors)


def _field_name(field) -> str:
    return "Q" if field.characteristic == 0 else {"Fp": field.characteristic}


def _cmd_preset(args):
    if not args.name:
        return {"command": "preset", "available": list(preset_names())}
    name, field = _parse_preset_name(args.name)
    built = build_preset(name, field)
    if isinstance(built, tuple):
        algebra, action = built
    else:
        algebra, action = built, None
    return presentation_to_document(algebra, action)


def _cmd_analyze(args):
    algebra, action = _load_algebra(args)
    ops = build_operator_algebras(algebra)
    report = {
        "command": "analyze",
        "field": _field_name(algebra.field),
        "dim": algebra.dim,
        "unary_algebra_dim": ops.unary_algebra.dim,
        "multiplication_algebra_dim": ops.multiplication_algebra.dim,
        "action_algebra_dim": ops.action_algebra.dim,
        "multiplication_algebra_nonzero": ops.multiplication_algebra.dim > 0,
    }
    rep = radical(algebra)
    report["radical_dim"] = rep.radical.dim
    report["is_semisimple"] = is_semisimple(algebra)
    report["is_simple"] = is_simple(algebra)
    if action is not None:
        report["is_simple_equivariant"] = is_simple_equivariant(algebra, action)
    return report


def _cmd_radical(args):
    algebra, _ = _load_algebra(args)
    rep = radical(algebra)
    return {
        "command": "radical",
        "field": _field_name(algebra.field),
        "dim": algebra.dim,
        "radical_dim": rep.radical.dim,
        "radical_basis": subspace_to_lists(rep.radical),
        "operator_radical_dim": rep.operator_radical.dim,
        "semisimple_part": presentation_to_document(rep.semisimple_part),
        "projection": matrix_to_lists(rep.projection),
    }


def _cmd_decompose(args):
    algebra, _ = _load_algebra(args)
    dec = minimal_ideal_decomposition(algebra)
    simple_flags = parallel_map(lambda s: is_simple(s[1]), dec.summands,
                                args.threads, args.seed)
    return {
        "command": "decompose",
        "field": _field_name(algebra.field),
        "dim": algebra.dim,
        "summands": [
            {
                "dim": part.dim,
                "basis": subspace_to_lists(part),
                "simple": flag,
            }
            for (part, _), flag in zip(dec.summands, simple_flags)
        ],
        "idempotents": [matrix_to_lists(p) for p in dec.idempotents],
    }


def _cmd_classify(args):
    algebra, action = _load_algebra(args)
    if action is None:
        raise ValidationError("classify requires a group action "
                              "(a 'group' entry in the input file or an action preset)")
    result = classify_simple_equivariant(algebra, action)
    _, induced_action = build_induced_algebra(
        result.group, result.subgroup, result.base, result.twist_map())
    psi = result.isomorphism
    induced_checks = parallel_map(
        lambda g: psi @ action.matrices[g] == induced_action.matrices[g] @ psi,
        range(action.group.order), args.threads, args.seed)
    return {
        "command": "classify",
        "field": _field_name(algebra.field),
        "dim": algebra.dim,
        "subgroup": list(result.subgroup),
        "subgroup_order": len(result.subgroup),
        "twist": [
            {"element": h, "matrix": matrix_to_lists(m)}
            for h, m in zip(result.subgroup, result.twist)
        ],
        "base": presentation_to_document(result.base),
        "base_dim": result.base.dim,
        "isomorphism": matrix_to_lists(result.isomorphism),
        "coset_representatives": list(result.coset_representatives),
        "verdicts": dict(result.verdicts) | {"fanout_complete": all(induced_checks)},
    }


def _cmd_check_ideal(args):
    algebra, action = _load_algebra(args)
    if not args.ideal:
        raise ValidationError("check-ideal requires --ideal FILE")
    candidate = _load_ideal(args.ideal, algebra)
    submodule, definitional = parallel_map(
        lambda fn: fn(algebra, candidate),
        [is_ideal, is_ideal_by_definition],
        args.threads, args.seed)
    report = {
        "command": "check-ideal",
        "field": _field_name(algebra.field),
        "dim": algebra.dim,
        "ideal_dim": candidate.dim,
        "submodule_test": submodule,
        "definition_test": definitional,
        "agree": submodule == definitional,
    }
    if not report["agree"]:
        raise TheoremContradictionError("ideal checkers disagree", report)
    if action is not None and submodule:
        report["is_invariant"] = is_invariant_ideal(algebra, action, candidate)
    return report


def render_text(node, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(node, dict):
        for key in node:
            value = node[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(node, list):
        if all(not isinstance(x, (dict, list)) for x in node):
            lines.append(pad + "[" + ", ".join(str(x) for x in node) + "]")
        else:
            for i, x in enumerate(node):
                lines.append(f"{pad}- [{i}]")
                lines.extend(render_text(x, indent + 1))
    else:
        lines.append(f"{pad}{node}")
    return lines


_COMMANDS = {
    "preset": _cmd_preset,
    "analyze": _cmd_analyze,
    "radical": _cmd_radical,
    "decompose": _cmd_decompose,
    "classify": _cmd_classify,
    "check-ideal": _cmd_check_ideal,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opalg",
        description="Exact structure theory for presented algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", default=None, help="presentation file, or - for stdin")
        p.add_argument("--preset", default=None, help="preset name, e.g. pointwise3@F5")
        p.add_argument("--ideal", default=None, help="JSON file with a 'basis' array")
        p.add_argument("--output", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=0,
                       help="fan-out ordering seed; never affects results")
        p.add_argument("--threads", type=int, default=1,
                       help="verification fan-out workers; never affects results")
        if name == "preset":
            p.add_argument("name", nargs="?", default=None,
                           help="preset to emit (omit to list)")
    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _COMMANDS[args.command](args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FieldGuardError as err:
        print(f"field guard: {err}", file=sys.stderr)
        return 3
    except TheoremContradictionError as err:
        print(f"internal certificate error: {err}", file=sys.stderr)
        if err.certificate:
            print(canonical_json(err.certificate), file=sys.stderr, end="")
        return 4
    if args.output == "json":
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write("\n".join(render_text(report)) + "\n")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
