"""Command line front end.

Subcommands wrap the library one to one: ``verify`` and ``invariants`` report
on a single complex, ``series`` and ``lens`` drive the family tools,
``classify`` runs the enumeration into a registry, ``slicing`` cuts a complex
along a vertex bipartition.  Input complexes come inline, from a file, or
from a registry address ``n:index``; reports print as text or as JSON
matching the schemas shipped under ``diffcyc/schemas``.

Exit codes: 0 the command ran to a verdict (including negative verdicts such
as ``manifold: false``), 2 usage or environment error, 3 malformed input
text, 4 resource limit reached (progress checkpointed when a registry is
attached).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .classify import DEFAULT_REGISTRY_ENV, Registry, RegistryError
from .classify import classify as run_classification
from .cycles import CyclicComplex, DifferenceCycle, ParseError, parse
from .groups import abelianization, export_presentation, fundamental_group
from .homology import homology, is_2_neighborly, is_orientable
from .lens import (
    LensVerificationError,
    lens_series,
    lens_type_of_series,
    verify_lens_member,
)
from .series import (
    SeriesError,
    SeriesSpec,
    dense_extendable,
    extend_dense,
    minimal_start,
    reduce_by_unit,
)
from .topology import (
    f_vector,
    is_combinatorial_manifold,
    is_connected,
    slicing,
)

__all__ = ["CommandConfig", "UsageError", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4

_ADDRESS = re.compile(r"^(\d+):(\d+)$")


class UsageError(ValueError):
    """Bad flag combination or unusable input source."""


@dataclass(frozen=True)
class CommandConfig:
    """Everything a subcommand handler needs, validated once after parsing."""

    subcommand: str
    input: str | None = None
    n: int | None = None
    index: int | None = None
    k: int | None = None
    parts: str | None = None
    registry: str | None = None
    format: str = "text"
    out: str | None = None
    jobs: int = 1
    time_limit: float | None = None
    checkpoint_every: int | None = None
    verbose: int = 0

    def __post_init__(self) -> None:
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise UsageError("--time-limit must be positive")
        if self.checkpoint_every is not None and self.checkpoint_every < 1:
            raise UsageError("--checkpoint-every must be at least 1")
        if (self.index is None) != (self.n is None) and self.subcommand != "classify":
            raise UsageError("--n and --index must be given together")
        if self.input is not None and self.n is not None:
            raise UsageError("give either --input or --n/--index, not both")

    def registry_root(self) -> Path:
        root = self.registry or os.environ.get(DEFAULT_REGISTRY_ENV, "registry")
        return Path(root)


def _input_text(cfg: CommandConfig) -> str:
    """Raw text of the input: inline if it parses at a glance, else a file."""
    if cfg.input is None:
        raise UsageError("an input is required; pass --input or --n/--index")
    text = cfg.input.strip()
    if text.startswith("{") or text.startswith("("):
        return text
    path = Path(cfg.input)
    if path.exists():
        return path.read_text().strip()
    raise UsageError(f"input file not found: {cfg.input}")


def _resolve_complex(cfg: CommandConfig) -> CyclicComplex:
    """The complex named by the one input source (inline, file, or address)."""
    if cfg.input is not None:
        address = _ADDRESS.match(cfg.input.strip())
        if address:
            root = Registry(cfg.registry_root())
            return root.complex(int(address.group(1)), int(address.group(2)))
        obj = parse(_input_text(cfg))
        if isinstance(obj, DifferenceCycle):
            return CyclicComplex([obj])
        return obj
    if cfg.n is not None and cfg.index is not None:
        return Registry(cfg.registry_root()).complex(cfg.n, cfg.index)
    raise UsageError("an input is required; pass --input or --n/--index")


def _emit(cfg: CommandConfig, text: str, payload: dict) -> None:
    content = json.dumps(payload, indent=2) if cfg.format == "json" else text
    if cfg.out:
        Path(cfg.out).write_text(content + "\n")
    else:
        print(content)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def cmd_verify(cfg: CommandConfig) -> int:
    C = _resolve_complex(cfg)
    K = C.expand()
    fv = f_vector(K)
    manifold = is_combinatorial_manifold(C)
    connected = is_connected(K)
    neighborly = is_2_neighborly(K)
    text = "\n".join(
        [
            f"complex: {C}",
            f"n: {C.n}",
            f"f-vector: {fv}",
            f"manifold: {_flag(manifold)}",
            f"connected: {_flag(connected)}",
            f"2-neighborly: {_flag(neighborly)}",
        ]
    )
    payload = {
        "schema": "verify.v1",
        "complex": str(C),
        "n": C.n,
        "f_vector": list(fv),
        "manifold": manifold,
        "connected": connected,
        "two_neighborly": neighborly,
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_invariants(cfg: CommandConfig) -> int:
    C = _resolve_complex(cfg)
    H = homology(C)
    orientable = is_orientable(C)
    P = fundamental_group(C)
    ab = abelianization(P)
    matches = ab.rank == H.betti[1] and tuple(ab.torsion) == tuple(H.torsion[1])
    text = "\n".join(
        [
            f"complex: {C}",
            f"n: {C.n}",
            f"homology: {H}",
            f"orientable: {_flag(orientable)}",
            f"pi1: {export_presentation(P)}",
            f"abelianization: {ab}",
            f"abelianization matches H_1: {_flag(matches)}",
        ]
    )
    payload = {
        "schema": "invariants.v1",
        "complex": str(C),
        "n": C.n,
        "homology": {**H.as_dict(), "text": str(H)},
        "orientable": orientable,
        "pi1": {
            "generators": P.ngens,
            "relators": len(P.relators),
            "presentation": export_presentation(P),
            "abelianization": {**ab.as_dict(), "text": str(ab)},
            "matches_h1": matches,
        },
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_series_check(cfg: CommandConfig) -> int:
    C = _resolve_complex(cfg)
    report = dense_extendable(C)
    text = "\n".join(
        [
            f"complex: {C}",
            f"verdict: {'PASS' if report.passes else 'FAIL'}",
            f"margins: {list(report.margins)}",
            f"k-tilde: {report.k_tilde}",
            f"minimal start: {_flag(report.minimal_start)}",
        ]
    )
    payload = {
        "schema": "series-check.v1",
        "complex": str(C),
        "n": C.n,
        "passes": report.passes,
        "margins": list(report.margins),
        "k_tilde": report.k_tilde,
        "minimal_start": report.minimal_start,
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_series_extend(cfg: CommandConfig) -> int:
    if cfg.k is None:
        raise UsageError("series extend needs --k")
    C = _resolve_complex(cfg)
    member = extend_dense(C, cfg.k)
    text = "\n".join(
        [
            f"base: {C}",
            f"k: {cfg.k}",
            f"member: {member}",
            f"n: {member.n}",
        ]
    )
    payload = {
        "schema": "series-extend.v1",
        "base": str(C),
        "k": cfg.k,
        "member": str(member),
        "n": member.n,
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_series_minimal(cfg: CommandConfig) -> int:
    C = _resolve_complex(cfg)
    k_min, first = minimal_start(C)
    text = "\n".join(
        [
            f"complex: {C}",
            f"k-min: {k_min}",
            f"minimal: {first}",
            f"n: {first.n}",
        ]
    )
    payload = {
        "schema": "series-minimal.v1",
        "complex": str(C),
        "k_min": k_min,
        "minimal": str(first),
        "n": first.n,
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_series_reduce(cfg: CommandConfig) -> int:
    raw = _input_text(cfg)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"series spec is not valid JSON: {e.msg}", e.pos)
    spec = SeriesSpec.from_dict(data)
    reduction = reduce_by_unit(spec)
    if reduction is None:
        text = "\n".join(
            [
                f"base: {spec.base}",
                f"order: {spec.order}",
                "reduced: false",
            ]
        )
        payload = {
            "schema": "series-reduce.v1",
            "spec": spec.as_dict(),
            "reduced": False,
            "dense": None,
            "k0": None,
        }
    else:
        text = "\n".join(
            [
                f"base: {spec.base}",
                f"order: {spec.order}",
                "reduced: true",
                f"dense base: {reduction.dense.base}",
                f"k0: {reduction.k0}",
            ]
        )
        payload = {
            "schema": "series-reduce.v1",
            "spec": spec.as_dict(),
            "reduced": True,
            "dense": reduction.dense.as_dict(),
            "k0": reduction.k0,
        }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_lens_gen(cfg: CommandConfig) -> int:
    if cfg.k is None:
        raise UsageError("lens gen needs --k")
    C = lens_series(cfg.k)
    text = "\n".join([f"k: {cfg.k}", f"n: {C.n}", f"complex: {C}"])
    payload = {
        "schema": "lens-gen.v1",
        "k": cfg.k,
        "n": C.n,
        "complex": str(C),
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_lens_verify(cfg: CommandConfig) -> int:
    if cfg.k is None:
        raise UsageError("lens verify needs --k")
    try:
        report = verify_lens_member(cfg.k)
    except LensVerificationError as e:
        text = f"verified: false\nreason: {e}"
        payload = {
            "schema": "lens-verify.v1",
            "k": cfg.k,
            "verified": False,
            "reason": str(e),
            "report": None,
        }
        _emit(cfg, text, payload)
        return EXIT_OK
    orientable, genus = (report.slicing_orientable, report.slicing_genus)
    text = "\n".join(
        [
            f"name: {report.name}",
            f"n: {report.n}",
            "verified: true",
            f"manifold: {_flag(report.manifold)}",
            f"2-neighborly: {_flag(report.two_neighborly)}",
            f"even span solid torus: {_flag(report.even_span_solid_torus)}",
            f"odd span solid torus: {_flag(report.odd_span_solid_torus)}",
            f"slicing f-vector: {report.slicing_f_vector}",
            f"slicing surface: {'orientable' if orientable else 'non-orientable'}"
            f" genus {genus}",
            f"homology: {report.homology}",
            f"H_1 order: {report.h1_order}",
        ]
    )
    payload = {
        "schema": "lens-verify.v1",
        "k": cfg.k,
        "verified": True,
        "reason": None,
        "report": report.as_dict(),
    }
    _emit(cfg, text, payload)
    return EXIT_OK


def cmd_lens_type(cfg: CommandConfig) -> int:
    if cfg.k is None:
        raise UsageError("lens type needs --k")
    params = lens_type_of_series(cfg.k)
    payload = {
        "schema": "lens-type.v1",
        "k": cfg.k,
        "p": params.p,
        "q": params.q,
        "text": str(params),
    }
    _emit(cfg, str(params), payload)
    return EXIT_OK


def cmd_classify(cfg: CommandConfig) -> int:
    if cfg.n is None:
        raise UsageError("classify needs --n")
    reg = Registry(cfg.registry_root())
    result = run_classification(
        cfg.n,
        jobs=cfg.jobs,
        time_limit=cfg.time_limit,
        checkpoint_every=cfg.checkpoint_every,
        registry=reg,
    )
    if cfg.verbose:
        print(
            f"nodes: {result.nodes}, raw: {result.raw}, "
            f"seconds: {result.seconds:.2f}",
            file=sys.stderr,
        )
    row = f"{result.n} {result.connected} {len(result.iso_classes)}"
    payload = {
        "schema": "classify.v1",
        "registry": str(cfg.registry_root()),
        "row": row,
        **result.summary(),
    }
    if not result.complete:
        print(
            f"time limit reached after {len(result.all_complexes)} complexes; "
            f"progress checkpointed under {cfg.registry_root()}, rerun to resume",
            file=sys.stderr,
        )
        return EXIT_RESOURCE
    _emit(cfg, row, payload)
    return EXIT_OK


def _parse_parts(spec: str, n: int) -> list[int]:
    spec = spec.strip().lower()
    if spec == "even":
        return [v for v in range(n) if v % 2 == 0]
    if spec == "odd":
        return [v for v in range(n) if v % 2 == 1]
    try:
        verts = sorted({int(tok) for tok in spec.split(",") if tok.strip()})
    except ValueError:
        raise UsageError(f"--parts wants a comma list of vertices, got {spec!r}")
    if not verts:
        raise UsageError("--parts named no vertices")
    out_of_range = [v for v in verts if not 0 <= v < n]
    if out_of_range:
        raise UsageError(f"vertices {out_of_range} not in range(0, {n})")
    return verts


def cmd_slicing(cfg: CommandConfig) -> int:
    if cfg.parts is None:
        raise UsageError("slicing needs --parts (comma list, 'even', or 'odd')")
    C = _resolve_complex(cfg)
    part_a = _parse_parts(cfg.parts, C.n)
    S = slicing(C, part_a)
    orientable, genus = S.surface_type()
    fv = S.f_vector()
    text = "\n".join(
        [
            f"complex: {C}",
            f"part a: {','.join(map(str, part_a))}",
            f"f-vector: {fv}",
            f"euler characteristic: {S.euler_characteristic()}",
            f"surface: {'orientable' if orientable else 'non-orientable'}"
            f" genus {genus}",
        ]
    )
    payload = {
        "schema": "slicing.v1",
        "complex": str(C),
        "part_a": list(part_a),
        "f_vector": list(fv),
        "euler_characteristic": S.euler_characteristic(),
        "orientable": orientable,
        "genus": genus,
    }
    _emit(cfg, text, payload)
    return EXIT_OK


HANDLERS = {
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "series:check": cmd_series_check,
    "series:extend": cmd_series_extend,
    "series:minimal": cmd_series_minimal,
    "series:reduce": cmd_series_reduce,
    "lens:gen": cmd_lens_gen,
    "lens:verify": cmd_lens_verify,
    "lens:type": cmd_lens_type,
    "classify": cmd_classify,
    "slicing": cmd_slicing,
}


def _add_io_flags(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument(
            "--input",
            "-i",
            help="complex text, a file holding one, or a registry address n:index",
        )
        p.add_argument("--n", type=int, help="registry address: vertex count")
        p.add_argument("--index", type=int, help="registry address: complex index")
    p.add_argument("--registry", help="registry directory (default: $DIFFCYC_REGISTRY or ./registry)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--verbose", "-v", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffcyc",
        description="difference-cycle 3-manifolds: verify, classify, extend",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="manifold check and basic facts")
    _add_io_flags(p)

    p = sub.add_parser("invariants", help="homology, orientability, pi1")
    _add_io_flags(p)

    series = sub.add_parser("series", help="dense and order-l family tools")
    ssub = series.add_subparsers(dest="action", required=True)
    p = ssub.add_parser("check", help="dense-series margin test")
    _add_io_flags(p)
    p = ssub.add_parser("extend", help="k-th member of the dense series")
    _add_io_flags(p)
    p.add_argument("--k", type=int, required=True)
    p = ssub.add_parser("minimal", help="walk down to the first member")
    _add_io_flags(p)
    p = ssub.add_parser("reduce", help="reduce an order-l spec (JSON) to dense")
    _add_io_flags(p)

    lens = sub.add_parser("lens", help="the lens space series")
    lsub = lens.add_subparsers(dest="action", required=True)
    for name, about in (
        ("gen", "print member k"),
        ("verify", "full verification of member k"),
        ("type", "lens space parameters of member k"),
    ):
        p = lsub.add_parser(name, help=about)
        p.add_argument("--k", type=int, required=True)
        _add_io_flags(p, with_input=False)

    p = sub.add_parser("classify", help="enumerate manifolds on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-limit", type=float, dest="time_limit")
    p.add_argument("--checkpoint-every", type=int, dest="checkpoint_every")
    _add_io_flags(p, with_input=False)

    p = sub.add_parser("slicing", help="cut surface along a vertex bipartition")
    _add_io_flags(p)
    p.add_argument("--parts", help="side A: comma list of vertices, 'even', or 'odd'")

    return parser


def _config_from(args: argparse.Namespace) -> CommandConfig:
    subcommand = args.command
    if getattr(args, "action", None):
        subcommand = f"{args.command}:{args.action}"
    return CommandConfig(
        subcommand=subcommand,
        input=getattr(args, "input", None),
        n=getattr(args, "n", None),
        index=getattr(args, "index", None),
        k=getattr(args, "k", None),
        parts=getattr(args, "parts", None),
        registry=getattr(args, "registry", None),
        format=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        jobs=getattr(args, "jobs", 1),
        time_limit=getattr(args, "time_limit", None),
        checkpoint_every=getattr(args, "checkpoint_every", None),
        verbose=getattr(args, "verbose", 0),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config_from(args)
        return HANDLERS[cfg.subcommand](cfg)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (RegistryError, SeriesError, LensVerificationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (IndexError, KeyError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
