"""Command-line front end.

Every command builds a :class:`RunReport`; ``--json`` prints it as JSON and
the text form is rendered from the same payload. Exit codes: 0 success,
1 malformed input, 2 precondition failure, 3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from . import __version__, corpus
from .errors import MomentAngleError, NotPogorelovError, PreconditionError, ValidationError
from .hochster import betti_numbers, hochster_component, manifold_checks
from .obstructions import obstruction_scan
from .pogorelov import all_configurations, certificate_to_json, certify, polytope_digest, verify_certificate
from .polytope import SimplePolytope3, dual_complex, find_belts, is_flag, is_pogorelov, load_polytope, p_vector
from .simplicial import SimplicialComplex, load_complex

EXIT_OK, EXIT_VALIDATION, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3

Target = Union[SimplePolytope3, SimplicialComplex]


@dataclass
class RunReport:
    command: str
    input: dict
    results: dict = field(default_factory=dict)
    timing_seconds: float = 0.0
    tool_version: str = __version__
    error: Optional[dict] = None

    def to_json(self) -> dict:
        data = asdict(self)
        if data["error"] is None:
            del data["error"]
        return data


# --- inputs -------------------------------------------------------------------


def _digest(obj: dict) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def load_target(spec: str) -> tuple[Target, dict]:
    """A polytope or complex from a JSON path or a built-in name."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        if not path.exists():
            raise ValidationError(f"{spec}: no such file")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{spec}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise ValidationError(f"{spec}: expected a JSON object")
        if "facet_cycles" in data:
            obj: Target = load_polytope(data, name=data.get("name") or path.stem)
        elif "maximal_simplices" in data:
            obj = load_complex(data)
        else:
            raise ValidationError(f"{spec}: needs a 'facet_cycles' or 'maximal_simplices' key")
        name = path.stem
    elif spec in corpus.POLYTOPES:
        obj, name = corpus.polytope(spec), spec
    else:
        obj, name = corpus.complex_(spec), spec
    kind = "polytope" if isinstance(obj, SimplePolytope3) else "complex"
    return obj, {"name": name, "kind": kind, "m": obj.m, "sha256": _digest(obj.to_json())}


def _as_polytope(obj: Target) -> SimplePolytope3:
    if not isinstance(obj, SimplePolytope3):
        raise ValidationError("this command needs a polytope (a file with 'facet_cycles')")
    return obj


def _as_complex(obj: Target) -> SimplicialComplex:
    return dual_complex(obj) if isinstance(obj, SimplePolytope3) else obj


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        items = [int(t) for t in text.replace("{", "").replace("}", "").replace(" ", "").split(",") if t]
    except ValueError:
        raise ValidationError(f"cannot read vertex set {text!r}; use e.g. 1,3,5") from None
    if len(set(items)) != len(items):
        raise ValidationError(f"repeated vertex in {text!r}")
    return tuple(sorted(items))


# --- commands -----------------------------------------------------------------


def _belt(v) -> Optional[list[int]]:
    return list(v.witness.facets) if v.witness else None


def cmd_check(obj: Target, args) -> dict:
    P = _as_polytope(obj)
    flag, pog = is_flag(P), is_pogorelov(P)
    pv = p_vector(P)
    return {
        "flag": flag.holds,
        "flag_obstruction": None if flag else {"reason": flag.reason, "witness": _belt(flag)},
        "pogorelov": pog.holds,
        "pogorelov_obstruction": None if pog else {"reason": pog.reason, "witness": _belt(pog)},
        "p_vector": {str(k): c for k, c in pv.counts},
        "euler_identity": {"defect": pv.euler_defect(), "holds": pv.euler_defect() == 0},
        "fullerene": set(pv.as_dict()) <= {5, 6},
        "belt_counts": {str(k): len(find_belts(P, k)) for k in (3, 4)},
    }


def cmd_betti(obj: Target, args) -> dict:
    K = _as_complex(obj)
    table = betti_numbers(K, max_m=args.max_m)
    out = {
        "f_vector": list(K.f_vector),
        **table.to_json(),
        "euler_characteristic": table.euler_characteristic(),
        "subsets_visited": table.subsets_visited,
        "cones_skipped": table.cones_skipped,
    }
    if isinstance(obj, SimplePolytope3):
        out["manifold"] = manifold_checks(K, table)
    return out


def cmd_obstructions(obj: Target, args) -> dict:
    hits = obstruction_scan(_as_complex(obj))
    return {"count": len(hits), "hits": [{"vertices": list(S), "graph": gid} for S, gid in hits]}


def cmd_hochster(obj: Target, args) -> dict:
    K = _as_complex(obj)
    J = _parse_set(args.J)
    comp = hochster_component(K, J, args.q)
    return {
        "J": list(comp.J),
        "q": comp.q,
        "group": str(comp.group),
        "free_rank": comp.group.free_rank,
        "torsion": list(comp.group.torsion),
        "embedding_degree": comp.embedding_degree,
        "multidegree": {"p": comp.multidegree.p, "support": list(comp.multidegree.support)},
        "generators": [{" ".join(map(str, s)): c for s, c in sorted(g.coefficients.items())}
                       for g in comp.group.generators],
    }


def _summary(cert) -> dict:
    r = cert.result
    cfg = cert.configuration
    return {
        "vertex": list(cfg.vertex),
        "roles": list(cfg.roles),
        "degrees": list(r.degrees),
        "product_degree": r.degree,
        "mode": r.mode,
        "indeterminacy_generators": len(r.indeterminacy),
        "pruned_generators": len(cert.pruned.indeterminacy),
        "verdict": "nontrivial" if cert.nontrivial else "trivial",
    }


def cmd_massey(obj: Optional[Target], args) -> dict:
    if args.verify:
        data = json.loads(Path(args.verify).read_text())
        data = data.get("results", data)  # a saved --json report works too
        cert = data.get("certificate", data)
        out: dict[str, Any] = {"verified": args.verify, "checks": verify_certificate(data)}
        if obj is not None:
            P = _as_polytope(obj)
            if polytope_digest(P) != cert["polytope"]["digest"]:
                raise ValidationError("certificate belongs to a different polytope")
        out["verdict"] = cert["verdict"]
        return out
    if obj is None:
        raise ValidationError("massey needs a polytope or --verify")
    P = _as_polytope(obj)
    if args.all_configs:
        certs = []
        for cfg in all_configurations(P):
            certs.append(_summary(certify(P, cfg, indeterminacy=args.indeterminacy)))
        return {
            "configurations": len(certs),
            "all_nontrivial": all(c["verdict"] == "nontrivial" for c in certs),
            "certificates": certs,
        }
    cert = certify(P, indeterminacy=args.indeterminacy)
    payload = certificate_to_json(cert)
    if args.output:
        Path(args.output).write_text(json.dumps(payload, indent=1) + "\n")
    return {**_summary(cert), "written_to": args.output, "certificate": payload}


def cmd_export(obj: Target, args) -> dict:
    data = {"name": args.target, **obj.to_json()}
    text = json.dumps(data) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    return {"written_to": args.output, "data": data}


COMMANDS = {
    "check": cmd_check,
    "betti": cmd_betti,
    "massey": cmd_massey,
    "obstructions": cmd_obstructions,
    "hochster": cmd_hochster,
    "export": cmd_export,
}


# --- output -------------------------------------------------------------------


def _render(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(map(_scalar, v)) + "]"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, bool):
        return str(v).lower()
    return "-" if v is None else str(v)


def render_text(report: dict) -> str:
    head = f"{report['command']} {report['input'].get('name', '')} ({report['input'].get('kind', '-')})"
    body = dict(report.get("results", {}))
    if report["command"] == "massey":
        body.pop("certificate", None)  # summarized above; use --json for the full certificate
    lines = [head, *_render(body, 1)]
    if "error" in report:
        lines.append(f"  error: {report['error']['type']}: {report['error']['message']}")
    lines.append(f"  time: {report['timing_seconds']:.3f}s  version: {report['tool_version']}")
    return "\n".join(lines)


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    parser = argparse.ArgumentParser(prog="momentangle", description="Moment-angle manifold cohomology tools.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def target_cmd(name: str, help_: str, complex_ok: bool = True, optional: bool = False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("target", nargs="?" if (complex_ok or optional) else None,
                       help="built-in name or JSON file")
        if complex_ok:
            p.add_argument("--complex", dest="complex_target", metavar="TARGET",
                           help="simplicial complex (built-in name or JSON file)")
        return p

    target_cmd("check", "flagness, Pogorelov property and p-vector of a polytope", complex_ok=False)
    p = target_cmd("betti", "Betti numbers of the moment-angle complex")
    p.add_argument("--max-m", type=int, default=None, help="refuse complexes with more vertices")
    p = target_cmd("massey", "certify a nontrivial triple Massey product", complex_ok=False, optional=True)
    p.add_argument("--all-configs", action="store_true", help="certify every pentagon/vertex configuration")
    p.add_argument("--verify", metavar="PATH", help="recheck a stored certificate")
    p.add_argument("-o", "--output", metavar="PATH", help="write the certificate JSON here")
    p.add_argument("--indeterminacy", choices=("auto", "full", "multigraded"), default="auto")
    target_cmd("obstructions", "search for the five obstruction graphs")
    p = target_cmd("hochster", "one Hochster summand H~^q(K_J)")
    p.add_argument("--J", required=True, help="vertex set, e.g. 1,3,5")
    p.add_argument("--q", type=int, required=True)
    p = target_cmd("export", "write a built-in polytope or complex as JSON", complex_ok=False)
    p.add_argument("-o", "--output", metavar="PATH")
    return parser


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    return EXIT_INTERNAL


def run(argv: Optional[list[str]] = None) -> tuple[int, dict]:
    """Parse ``argv``, run the command and return ``(exit code, report)``."""
    args = build_parser().parse_args(argv)
    spec = getattr(args, "complex_target", None) or args.target
    if getattr(args, "complex_target", None) and args.target:
        raise SystemExit("give either a positional target or --complex, not both")
    report = RunReport(args.command, {"name": spec})
    start = time.perf_counter()
    code = EXIT_OK
    try:
        obj = None
        if spec is not None:
            obj, report.input = load_target(spec)
            if getattr(args, "complex_target", None) and not isinstance(obj, SimplicialComplex):
                raise ValidationError(f"{spec} is a polytope, not a simplicial complex")
        elif args.command != "massey":
            raise ValidationError(f"{args.command} needs a target")
        report.results = COMMANDS[args.command](obj, args)
    except (MomentAngleError, OSError, KeyError) as exc:
        code = _exit_code(exc) if isinstance(exc, MomentAngleError) else EXIT_VALIDATION
        report.error = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, NotPogorelovError) and exc.witness is not None:
            report.error["witness"] = list(exc.witness.facets)
    except AssertionError as exc:
        code = EXIT_INTERNAL
        report.error = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    report.timing_seconds = round(time.perf_counter() - start, 6)
    return code, report.to_json()


def main(argv: Optional[list[str]] = None) -> int:
    code, report = run(argv)
    args_json = "--json" in (sys.argv[1:] if argv is None else argv)
    if args_json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    if code:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
