"""Space document format and the query command line.

A space document is UTF-8 JSON with three top-level keys:

    {
      "dimensions": ["hue", "round", "sweet"],
      "domains": {"color": [0], "shape": [1], "taste": [2]},
      "concepts": {
        "pear": {
          "domains": ["color", "shape", "taste"],
          "cuboids": [{"p_min": [0.5, 0.4, 0.35], "p_max": [0.7, 0.6, 0.45]}],
          "mu0": 1.0,
          "c": 12.0,
          "weights": {
            "domains": {"color": 0.5, "shape": 1.25, "taste": 1.25},
            "dimensions": {"color": [1.0], "shape": [1.0], "taste": [1.0]}
          }
        }
      }
    }

Bounds may be the strings "inf"/"-inf" (JSON has no infinity literal).
Dimension weight lists align with the domain's dimension index list.
Weights are renormalized on load, so documents with unnormalized weights
are accepted and round-trip to their normalized form.

The CLI runs one query per invocation:

    conceptspace query <space-file> <verb> <args...>
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .concept import Concept
from .core import make_core
from .cuboid import Cuboid, make_cuboid
from .errors import ConceptSpaceError, DocumentError, UnboundedSizeError
from .measure import MeasureContext, concept_size, implies, monte_carlo_size, subsethood
from .space import Space
from .weights import make_weights

_INF = float("inf")

_VERBS = (
    "size",
    "membership",
    "subsethood",
    "implies",
    "similarity",
    "between",
    "intersect",
    "unify",
    "project",
    "cut",
    "mcsize",
)


@dataclass(frozen=True)
class SpaceDocument:
    """A parsed space file: dimension names, the space, and its concepts."""

    dimension_names: tuple[str, ...]
    space: Space
    concepts: dict[str, Concept]


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------


def _decode_bound(value, where: str) -> float:
    if isinstance(value, str):
        if value == "inf":
            return _INF
        if value == "-inf":
            return -_INF
        raise DocumentError(f"{where}: bound {value!r} is not a number or inf/-inf")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise DocumentError(f"{where}: bound {value!r} is not a number")


def _require(obj: Mapping, key: str, where: str):
    if key not in obj:
        raise DocumentError(f"{where}: missing required key {key!r}")
    return obj[key]


def parse_space(text: str) -> SpaceDocument:
    """Parse and fully validate a space document.

    Raises:
        DocumentError: on malformed JSON (with line and column) or on any
            violated invariant, naming the offending concept.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise DocumentError("document root must be a JSON object")

    names = _require(raw, "dimensions", "document")
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise DocumentError("'dimensions' must be a list of strings")
    if len(set(names)) != len(names):
        raise DocumentError("dimension names must be unique")

    domains_raw = _require(raw, "domains", "document")
    if not isinstance(domains_raw, dict):
        raise DocumentError("'domains' must be an object")
    try:
        space = Space(len(names), {dom: tuple(v) for dom, v in domains_raw.items()})
    except ConceptSpaceError as exc:
        raise DocumentError(f"invalid domain structure: {exc}") from exc

    concepts_raw = raw.get("concepts", {})
    if not isinstance(concepts_raw, dict):
        raise DocumentError("'concepts' must be an object")
    concepts: dict[str, Concept] = {}
    for name, record in concepts_raw.items():
        try:
            concepts[name] = _parse_concept(record, space, f"concept {name!r}")
        except DocumentError:
            raise
        except ConceptSpaceError as exc:
            raise DocumentError(f"concept {name!r}: {exc}") from exc
    return SpaceDocument(tuple(names), space, concepts)


def _parse_concept(record, space: Space, where: str) -> Concept:
    if not isinstance(record, dict):
        raise DocumentError(f"{where}: must be an object")
    domains = _require(record, "domains", where)
    if not isinstance(domains, list) or not domains:
        raise DocumentError(f"{where}: 'domains' must be a non-empty list")

    cuboid_records = _require(record, "cuboids", where)
    if not isinstance(cuboid_records, list) or not cuboid_records:
        raise DocumentError(f"{where}: 'cuboids' must be a non-empty list")
    cuboids = []
    for idx, cr in enumerate(cuboid_records):
        if not isinstance(cr, dict):
            raise DocumentError(f"{where}: cuboid {idx} must be an object")
        p_min = [
            _decode_bound(v, f"{where}, cuboid {idx}")
            for v in _require(cr, "p_min", f"{where}, cuboid {idx}")
        ]
        p_max = [
            _decode_bound(v, f"{where}, cuboid {idx}")
            for v in _require(cr, "p_max", f"{where}, cuboid {idx}")
        ]
        cuboids.append(make_cuboid(p_min, p_max, domains, space))
    core = make_core(cuboids, frozenset(domains), space)

    weights_raw = _require(record, "weights", where)
    if not isinstance(weights_raw, dict):
        raise DocumentError(f"{where}: 'weights' must be an object")
    dom_w = _require(weights_raw, "domains", f"{where}, weights")
    dim_w_raw = _require(weights_raw, "dimensions", f"{where}, weights")
    dim_w: dict[str, dict[int, float]] = {}
    for dom, values in dim_w_raw.items():
        if dom not in space.domains:
            raise DocumentError(f"{where}: weights name unknown domain {dom!r}")
        dims = space.domains[dom]
        if not isinstance(values, list) or len(values) != len(dims):
            raise DocumentError(
                f"{where}: dimension weights of {dom!r} must list "
                f"{len(dims)} values"
            )
        dim_w[dom] = dict(zip(dims, (float(v) for v in values)))
    weights = make_weights(dom_w, dim_w)

    mu0 = _require(record, "mu0", where)
    c = _require(record, "c", where)
    return Concept(core, float(mu0), float(c), weights)


def load_space(path: str | Path) -> SpaceDocument:
    """Read and parse a space document from a file."""
    return parse_space(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------


def _encode_bound(v: float):
    if v == _INF:
        return "inf"
    if v == -_INF:
        return "-inf"
    return v


def serialize_space(doc: SpaceDocument) -> str:
    """Canonical text form: sorted keys, full-precision floats,
    infinities as strings. parse(serialize(doc)) == doc."""
    space = doc.space
    obj = {
        "dimensions": list(doc.dimension_names),
        "domains": {dom: list(dims) for dom, dims in space.domains.items()},
        "concepts": {
            name: _concept_record(t, space) for name, t in doc.concepts.items()
        },
    }
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _concept_record(t: Concept, space: Space) -> dict:
    return {
        "domains": sorted(t.core.domains),
        "cuboids": [
            {
                "p_min": [_encode_bound(v) for v in cub.p_min],
                "p_max": [_encode_bound(v) for v in cub.p_max],
            }
            for cub in t.core.cuboids
        ],
        "mu0": t.mu0,
        "c": t.c,
        "weights": {
            "domains": dict(t.weights.domain_weights),
            "dimensions": {
                dom: [t.weights.dimension_weights[dom][d] for d in space.domains[dom]]
                for dom in t.core.domains
            },
        },
    }


def save_space(doc: SpaceDocument, path: str | Path) -> None:
    Path(path).write_text(serialize_space(doc), encoding="utf-8")


# --------------------------------------------------------------------------
# CLI
# --------------------------------------------------------------------------


class _UsageError(Exception):
    pass


def format_concept(t: Concept, space: Space) -> str:
    """Multi-line plain-text rendering of a concept."""
    cubs = ", ".join(
        "[{}]-[{}]".format(
            ", ".join(repr(v) for v in cub.p_min),
            ", ".join(repr(v) for v in cub.p_max),
        )
        for cub in t.core.cuboids
    )
    dom_w = ", ".join(
        f"{dom!r}: {t.weights.domain_weights[dom]!r}"
        for dom in sorted(t.weights.domain_weights)
    )
    dim_w = ", ".join(
        "{!r}: {{{}}}".format(
            dom,
            ", ".join(
                f"{d}: {w!r}"
                for d, w in sorted(t.weights.dimension_weights[dom].items())
            ),
        )
        for dom in sorted(t.weights.dimension_weights)
    )
    return (
        f"core: {{{cubs}}}\n"
        f"mu: {t.mu0!r}\n"
        f"c: {t.c!r}\n"
        f"weights: <{{{dom_w}}}, {{{dim_w}}}>"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conceptspace",
        description="Query a concept space defined in a JSON document.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    query = sub.add_parser("query", help="run one query against a space file")
    query.add_argument("space_file", help="path to the space document")
    query.add_argument("verb", choices=_VERBS, help="operation to run")
    query.add_argument(
        "args",
        nargs="*",
        help="verb arguments: concept names, domain or dimension names, numbers",
    )
    query.add_argument(
        "--tolerance",
        type=float,
        default=1e-8,
        help="betweenness tolerance (default 1e-8)",
    )
    query.add_argument(
        "--mc-samples",
        type=int,
        default=100_000,
        help="sample count for mcsize (default 100000)",
    )
    query.add_argument(
        "--mc-seed", type=int, default=0, help="random seed for mcsize (default 0)"
    )
    return parser


def _concept_arg(doc: SpaceDocument, name: str) -> Concept:
    try:
        return doc.concepts[name]
    except KeyError:
        raise DocumentError(f"unknown concept {name!r}") from None


def _float_arg(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise _UsageError(f"{what} must be a number, got {text!r}") from None


def _dim_arg(doc: SpaceDocument, text: str) -> int:
    if text in doc.dimension_names:
        return doc.dimension_names.index(text)
    try:
        dim = int(text)
    except ValueError:
        raise DocumentError(f"unknown dimension {text!r}") from None
    if not 0 <= dim < doc.space.n_dims:
        raise DocumentError(f"dimension index {dim} out of range")
    return dim


def _expect_args(args: Sequence[str], count: int, usage: str) -> None:
    if len(args) != count:
        raise _UsageError(f"expected {usage}")


def _mc_bounds(t: Concept, space: Space) -> Cuboid:
    """Box inside which nearly all (all but < 1e-6) membership mass lies."""
    region_lo = [min(c.p_min[d] for c in t.core.cuboids) for d in range(space.n_dims)]
    region_hi = [max(c.p_max[d] for c in t.core.cuboids) for d in range(space.n_dims)]
    if not all(map(math.isfinite, region_lo + region_hi)):
        raise UnboundedSizeError("concept is unbounded; supply finite bounds")
    lo = []
    hi = []
    for d in range(space.n_dims):
        pad = math.log(1e6 * t.mu0) / (t.c * t.weights.scale(d))
        lo.append(region_lo[d] - pad)
        hi.append(region_hi[d] + pad)
    return Cuboid(tuple(lo), tuple(hi), t.core.domains)


def _run_query(ns: argparse.Namespace) -> int:
    doc = load_space(ns.space_file)
    space = doc.space
    args = ns.args
    verb = ns.verb

    if verb == "size":
        _expect_args(args, 1, "size <concept>")
        print(concept_size(_concept_arg(doc, args[0])))
    elif verb == "mcsize":
        _expect_args(args, 1, "mcsize <concept>")
        t = _concept_arg(doc, args[0])
        bounds = _mc_bounds(t, space)
        print(monte_carlo_size(t, bounds, ns.mc_samples, ns.mc_seed))
    elif verb == "membership":
        if len(args) != 1 + space.n_dims:
            raise _UsageError(
                f"expected membership <concept> <{space.n_dims} coordinates>"
            )
        t = _concept_arg(doc, args[0])
        point = [_float_arg(v, "coordinate") for v in args[1:]]
        print(t.membership(point, space))
    elif verb in ("subsethood", "implies", "similarity"):
        _expect_args(args, 2, f"{verb} <concept> <concept>")
        t1 = _concept_arg(doc, args[0])
        t2 = _concept_arg(doc, args[1])
        if verb == "subsethood":
            print(subsethood(t1, t2, space))
        elif verb == "implies":
            print(implies(t1, t2, space))
        else:
            print(t1.similarity_to(t2, space))
    elif verb == "between":
        _expect_args(args, 3, "between <first> <middle> <second>")
        first = _concept_arg(doc, args[0])
        middle = _concept_arg(doc, args[1])
        second = _concept_arg(doc, args[2])
        print(middle.between(first, second, space, tol=ns.tolerance))
    elif verb in ("intersect", "unify"):
        _expect_args(args, 2, f"{verb} <concept> <concept>")
        t1 = _concept_arg(doc, args[0])
        t2 = _concept_arg(doc, args[1])
        out = t1.intersect(t2, space) if verb == "intersect" else t1.unify(t2, space)
        print(format_concept(out, space))
    elif verb == "project":
        if len(args) < 2:
            raise _UsageError("expected project <concept> <domain> [<domain>...]")
        t = _concept_arg(doc, args[0])
        kept = args[1:]
        unknown = [dom for dom in kept if dom not in space.domains]
        if unknown:
            raise DocumentError(f"unknown domain {unknown[0]!r}")
        print(format_concept(t.project(kept, space), space))
    elif verb == "cut":
        _expect_args(args, 3, "cut <concept> <dimension> <value>")
        t = _concept_arg(doc, args[0])
        dim = _dim_arg(doc, args[1])
        value = _float_arg(args[2], "cut value")
        plus, minus = t.cut(dim, value, space)
        print("plus:")
        print(format_concept(plus, space) if plus else "none")
        print("minus:")
        print(format_concept(minus, space) if minus else "none")
    else:  # pragma: no cover - argparse restricts the choices
        raise _UsageError(f"unknown verb {verb!r}")
    return 0


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run one CLI invocation.

    Returns 0 on success, 1 on usage errors, 2 on validation or numeric
    errors (including unknown concept names and unreadable files).
    """
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return _run_query(ns)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConceptSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
