"""pastelab command line: validate, hom, certify, corpus."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .computad import DEFAULT_LEVEL, verify_main_theorem_homwise
from .corpus import generate_corpus
from .errors import EmbeddingError, InvalidScheme, ParseError, StructureError, UnknownVertex
from .hom_poset import coordinatize, cube_points, hom_poset, pathify
from .path_kit import directly_above_order, sub_scheme_between
from .scheme_core import dumps_canonical, parse_scheme, serialize_graph, to_dot, validate_pasting_scheme

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    level: int = DEFAULT_LEVEL
    budget: int = 10**6
    format: str = "text"
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("--level must be nonnegative")
        if self.budget < 1:
            raise ValueError("--budget must be at least 1")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load(path: str):
    """Read and validate a scheme file, mapping failures to exit codes."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise _Fail(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        graph = parse_scheme(raw)
    except ParseError as exc:
        raise _Fail(EXIT_PARSE, f"ParseError: {exc}") from None
    except StructureError as exc:
        raise _Fail(EXIT_INVALID, f"StructureError: {exc}") from None
    return graph


def _validate(graph):
    try:
        return validate_pasting_scheme(graph), None
    except InvalidScheme as exc:
        return None, exc
    except EmbeddingError as exc:
        return None, InvalidScheme([exc])


def _emit(text: str, out=None):
    (out or sys.stdout).write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------- validate

def _census(ps) -> dict:
    return {
        "objects": len(ps.objects),
        "edges": len(ps.edges),
        "interior_faces": ps.num_faces,
        "source": ps.s,
        "target": ps.t,
        "dom": list(ps.dom.edges),
        "cod": list(ps.cod.edges),
    }


def cmd_validate(cfg: RunConfig) -> int:
    graph = _load(cfg.inputs[0])
    ps, err = _validate(graph)
    if cfg.format == "json":
        if ps is None:
            body = {"valid": False, "errors": [{"kind": getattr(e, "kind", type(e).__name__), "message": str(e)} for e in err.errors]}
        else:
            body = {"valid": True, "census": _census(ps), "faces": [f.to_json() for f in ps.faces]}
        _emit(dumps_canonical(body))
    elif cfg.format == "dot":
        _emit(to_dot(ps if ps is not None else graph))
    else:
        if ps is None:
            lines = ["invalid pasting scheme"]
            lines += [f"  {getattr(e, 'kind', type(e).__name__)}: {e}" for e in err.errors]
        else:
            c = _census(ps)
            lines = [
                "valid pasting scheme",
                f"{c['objects']} objects, {c['edges']} edges, {c['interior_faces']} interior faces",
                f"source {ps.s}, target {ps.t}",
                f"dom: {ps.dom}",
                f"cod: {ps.cod}",
            ]
            lines += [f"  face {f.id}: {f.dom} => {f.cod}" for f in ps.faces]
        _emit("\n".join(lines))
    return EXIT_OK if ps is not None else EXIT_INVALID


# --------------------------------------------------------------------------- hom

def _hom_report(ps, x, y) -> dict:
    h = hom_poset(ps, x, y)
    body = {**h.to_json(), "elements": [str(p) for p in h.elements]}
    if x == y or not ps.leq(x, y):
        body.update(cube={"faces": [], "constraints": [], "points": []}, coordinates={})
        return body
    local = sub_scheme_between(ps, x, y)
    below = directly_above_order(local)
    coords = {p: coordinatize(local, p) for p in h.elements}
    points = cube_points(local)
    # coordinatization must be a bijection onto the constrained cube points
    assert sorted(map(str, coords.values())) == sorted(map(str, points))
    assert all(pathify(local, f) == p for p, f in coords.items())
    body["cube"] = {
        "faces": list(local.face_ids),
        "constraints": [[a, b] for a, bs in below.items() for b in bs],
        "points": [str(f) for f in points],
    }
    body["coordinates"] = {str(p): str(f) for p, f in coords.items()}
    return body


def _hasse_dot(h) -> str:
    poset = h.to_finposet()
    lines = ["digraph hom {", "  rankdir=TB;"]
    for p in h.elements:
        lines.append(f"  {json.dumps(str(p))};")
    for a, b in poset.covers():
        lines.append(f"  {json.dumps(str(a))} -> {json.dumps(str(b))};")
    lines.append("}")
    return "\n".join(lines)


def cmd_hom(cfg: RunConfig) -> int:
    path, x, y = cfg.inputs
    ps, err = _validate(_load(path))
    if ps is None:
        raise _Fail(EXIT_INVALID, f"invalid pasting scheme: {err}")
    try:
        ps.check_vertex(x)
        ps.check_vertex(y)
    except UnknownVertex as exc:
        raise _Fail(EXIT_INVALID, f"UnknownVertex: {exc}") from None
    if cfg.format == "dot":
        _emit(_hasse_dot(hom_poset(ps, x, y)))
        return EXIT_OK
    body = _hom_report(ps, x, y)
    if cfg.format == "json":
        _emit(dumps_canonical(body))
    else:
        lines = [f"hom({x}, {y}): {len(body['elements'])} elements"]
        lines += [f"  {p}  [{body['coordinates'].get(p, '')}]" for p in body["elements"]]
        cube = body["cube"]
        lines.append(f"faces: {' '.join(cube['faces'])}")
        lines += [f"  {a} >= {b}" for a, b in cube["constraints"]] or ["  no constraints"]
        _emit("\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------- certify

def cmd_certify(cfg: RunConfig) -> int:
    ps, err = _validate(_load(cfg.inputs[0]))
    if ps is None:
        raise _Fail(EXIT_INVALID, f"invalid pasting scheme: {err}")
    if cfg.level < 1:
        raise _Fail(EXIT_INVALID, "certification needs --level of at least 1")
    report = verify_main_theorem_homwise(ps, cfg.level, cfg.budget)
    if cfg.format == "json":
        _emit(dumps_canonical(report.to_json()))
    else:
        lines = [f"level {report.level}; subcomputad {report.subcomputad}; one-way {report.one_way}"]
        for r in report.pairs:
            j = r.to_json()
            lines.append(
                f"  ({r.pair[0]}, {r.pair[1]}): G {j['g_chain_count']} / NF {j['nf_chain_count']} chains, "
                f"certificate {j['certificate_length']}, verified {j['verified']}"
            )
        _emit("\n".join(lines))
    if report.unknown:
        return EXIT_UNKNOWN
    return EXIT_OK if report.ok else EXIT_INVALID


# --------------------------------------------------------------------------- corpus

def cmd_corpus(cfg: RunConfig, count: int, max_faces: int) -> int:
    if cfg.out is None:
        raise _Fail(EXIT_PARSE, "corpus needs --out DIR")
    os.makedirs(cfg.out, exist_ok=True)
    for entry in generate_corpus(cfg.seed, count, max_faces):
        with open(os.path.join(cfg.out, entry.name + ".json"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_graph(entry.scheme))
    _emit(f"wrote {count} schemes to {cfg.out}")
    return EXIT_OK


# --------------------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="text")
    common.add_argument("--level", type=int, default=DEFAULT_LEVEL, help="truncation level N")
    common.add_argument("--budget", type=int, default=10**6, help="certifier step budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output directory")

    parser = argparse.ArgumentParser(prog="pastelab", description="Pasting-scheme toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="validate a scheme file")
    p.add_argument("file")
    p = sub.add_parser("hom", parents=[common], help="hom-poset between two vertices")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("certify", parents=[common], help="homwise inner-anodyne certificates")
    p.add_argument("file")
    p = sub.add_parser("corpus", parents=[common], help="write random valid schemes")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-faces", type=int, default=4)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = tuple(getattr(args, k) for k in ("file", "x", "y") if hasattr(args, k))
    try:
        cfg = RunConfig(args.command, inputs, args.level, args.budget, args.format, args.seed, args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if cfg.command == "validate":
            return cmd_validate(cfg)
        if cfg.command == "hom":
            return cmd_hom(cfg)
        if cfg.command == "certify":
            return cmd_certify(cfg)
        if args.count < 1:
            raise _Fail(EXIT_PARSE, "--count must be at least 1")
        return cmd_corpus(cfg, args.count, args.max_faces)
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
