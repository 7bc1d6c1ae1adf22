"""The ``statec`` command line tool.

Commands operate on ideal files (see :mod:`statepoly.parsing` for the
format) and emit a deterministic ``CommandResult`` document: the command
name, a digest of the inputs, any warnings, and a payload that is valid
JSON with rationals printed as ``p/q`` strings (never floats).  The
``--format csv`` option renders tabular payloads as CSV instead.

Exit codes: 0 on success, 2 on validation or parse failures, 3 when an
oracle budget was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .chains import (
    ChainInput,
    ExtremalityError,
    barycenter_decompose,
    decomposed_state_polytope,
    semistability_via_components,
    tau_vector,
    validate_chain,
)
from .groebner import (
    buchberger,
    eliminate,
    implicitize,
    initial_ideal,
    intersect_ideals,
)
from .hm import hm_index_decomposed, hm_index_direct
from .lp import member_convex_hull
from .orders import MonomialOrder, matrix_order, named_order, weight_order
from .parsing import (
    IdealFile,
    ParseError,
    format_polynomial,
    format_vector,
    parse_ideal_file,
    parse_int_vector,
    parse_vector,
    scalar_to_json,
)
from .polytope import VPolytope, load_polytope, polytope_payload
from .rings import Ideal
from .rosary import (
    RosarySpec,
    rosary_assembled_ideal,
    rosary_component_ideal,
    rosary_end_conics,
    rosary_slice_decomposition_check,
    rosary_w_table,
)
from .state import (
    BudgetExhausted,
    enumerate_state_polytope,
    read_budget_from_env,
    semistability_report,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class CommandResult:
    """What a command produced: a deterministic document plus exit status."""

    command: str
    input_digest: str
    payload: object
    warnings: tuple[str, ...] = ()
    format: str = "json"
    exit_code: int = EXIT_OK
    out: str | None = None

    def document(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "payload": self.payload,
            "warnings": list(self.warnings),
        }

    def rendered(self) -> str:
        if self.format == "csv":
            return _render_csv(self.payload)
        return json.dumps(self.document(), indent=2, sort_keys=True) + "\n"


def _render_csv(payload: object) -> str:
    if not (isinstance(payload, dict) and "columns" in payload and "rows" in payload):
        raise ValueError("this command has no tabular payload; use --format json")
    columns = payload["columns"]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in payload["rows"]:
        writer.writerow([row[c] for c in columns])
    return out.getvalue()


# ---------------------------------------------------------------------------
# small serialization helpers


def _json_vector(values: Sequence) -> list:
    return [scalar_to_json(Fraction(v)) for v in values]


def _json_monomial(mono: Sequence[int]) -> list[int]:
    return [int(e) for e in mono]


def _witnesses_json(witnesses) -> dict[str, list[int]]:
    return {
        format_vector(v): [int(w) for w in direction]
        for v, direction in sorted(witnesses.items())
    }


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_ideal_file(path: str) -> IdealFile:
    return parse_ideal_file(_read_text(path))


def _single_ideal(doc: IdealFile) -> Ideal:
    return Ideal(doc.arity, doc.single_ideal_generators())


def _homogeneity_warnings(ideal: Ideal) -> list[str]:
    if ideal.is_homogeneous():
        return []
    return ["input generators are not homogeneous"]


def _order_from_args(
    name: str | None, arity: int, weights: Sequence[Fraction] | None = None
) -> MonomialOrder:
    """Accept a family name, ``weight`` (uses --weights), or semicolon-
    separated matrix rows such as ``1,1,1;0,-1,0``."""
    if name is None:
        return named_order("grevlex", arity)
    if name in ("lex", "grlex", "grevlex"):
        return named_order(name, arity)
    if name == "weight":
        if weights is None:
            raise ValueError("--order weight needs --weights")
        return weight_order(weights)
    if ";" in name or "," in name:
        rows = [parse_vector(row) for row in name.split(";") if row.strip()]
        return matrix_order(rows)
    raise ValueError(
        f"unknown order {name!r}: expected lex, grlex, grevlex, weight, "
        f"or semicolon-separated matrix rows"
    )


def _chain_from_file(doc: IdealFile, base_dir: Path) -> ChainInput:
    if doc.blocks is None:
        raise ValueError("chain commands need a 'blocks:' line in the ideal file")
    n_components = len(doc.blocks) - 1
    components: list[Ideal | VPolytope] = []
    for k in range(1, n_components + 1):
        has_ideal = k in doc.sections
        has_poly = k in doc.polytope_paths
        if has_ideal and has_poly:
            raise ValueError(f"component {k} given both as an ideal and a polytope")
        if has_ideal:
            components.append(Ideal(doc.arity, doc.sections[k]))
        elif has_poly:
            components.append(load_polytope(base_dir / doc.polytope_paths[k]))
        else:
            raise ValueError(f"component {k} missing from the ideal file")
    return ChainInput(doc.blocks, components)


def _digest(command: str, args: argparse.Namespace, files: Sequence[str]) -> str:
    skip = {"out", "format", "func"}
    parts = [command]
    for key, value in sorted(vars(args).items()):
        if key in skip or callable(value):
            continue
        parts.append(f"{key}={value!r}")
    for path in files:
        body = Path(path).read_bytes()
        parts.append(hashlib.sha256(body).hexdigest())
    return hashlib.sha256("\n".join(parts).encode("utf-8")).hexdigest()


def _budget(args: argparse.Namespace) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    return read_budget_from_env()


# ---------------------------------------------------------------------------
# command handlers


def _cmd_gb(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    ideal = _single_ideal(doc)
    order = _order_from_args(args.order, doc.arity, doc.weights)
    gb = buchberger(ideal, order)
    payload = {
        "order": order.name,
        "basis": [format_polynomial(g, doc.variables, order) for g in gb.elements],
        "leads": [_json_monomial(m) for m in gb.leads],
    }
    return CommandResult(
        command="gb",
        input_digest=_digest("gb", args, [args.ideal]),
        payload=payload,
        warnings=tuple(_homogeneity_warnings(ideal)),
        format=args.format,
    )


def _cmd_initial(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    ideal = _single_ideal(doc)
    order = _order_from_args(args.order, doc.arity, doc.weights)
    mi = initial_ideal(ideal, order)
    payload = {
        "order": order.name,
        "generators": [_json_monomial(m) for m in sorted(mi.gens)],
    }
    return CommandResult(
        command="initial",
        input_digest=_digest("initial", args, [args.ideal]),
        payload=payload,
        warnings=tuple(_homogeneity_warnings(ideal)),
        format=args.format,
    )


def _state_payload(result) -> dict:
    payload = {
        "m": result.m,
        "q": result.q,
        "status": result.status,
        "query_count": result.query_count,
        "polytope": polytope_payload(result.polytope),
        "witnesses": _witnesses_json(result.witnesses),
    }
    if result.hull_dim is not None:
        payload["hull_dim"] = result.hull_dim
    return payload


def _cmd_state(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    ideal = _single_ideal(doc)
    result = enumerate_state_polytope(ideal, args.m, _budget(args))
    return CommandResult(
        command="state",
        input_digest=_digest("state", args, [args.ideal]),
        payload=_state_payload(result),
        warnings=tuple(_homogeneity_warnings(ideal)),
        format=args.format,
        exit_code=EXIT_OK if result.complete else EXIT_BUDGET,
    )


def _cmd_intersect(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    if doc.section_count() < 2:
        raise ValueError("intersect needs ideal[1] and ideal[2] sections")
    left = Ideal(doc.arity, doc.sections[1])
    right = Ideal(doc.arity, doc.sections[2])
    out = intersect_ideals(left, right)
    for k in sorted(doc.sections):
        if k > 2:
            out = intersect_ideals(out, Ideal(doc.arity, doc.sections[k]))
    display = named_order("grevlex", doc.arity)
    payload = {
        "generators": [
            format_polynomial(g, doc.variables, display) for g in out.generators
        ]
    }
    return CommandResult(
        command="intersect",
        input_digest=_digest("intersect", args, [args.ideal]),
        payload=payload,
        format=args.format,
    )


def _cmd_eliminate(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    ideal = _single_ideal(doc)
    keep = parse_int_vector(args.keep)
    out = eliminate(ideal, keep)
    display = named_order("grevlex", doc.arity)
    payload = {
        "keep": list(keep),
        "generators": [
            format_polynomial(g, doc.variables, display) for g in out.generators
        ],
    }
    return CommandResult(
        command="eliminate",
        input_digest=_digest("eliminate", args, [args.ideal]),
        payload=payload,
        format=args.format,
    )


def _cmd_implicitize(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    forms = doc.single_ideal_generators()
    out = implicitize(forms, args.nvars)
    names = [f"x{i}" for i in range(out.arity)]
    display = named_order("grevlex", out.arity)
    payload = {
        "variables": names,
        "generators": [format_polynomial(g, names, display) for g in out.generators],
    }
    return CommandResult(
        command="implicitize",
        input_digest=_digest("implicitize", args, [args.ideal]),
        payload=payload,
        format=args.format,
    )


def _cmd_chain_state(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    chain = _chain_from_file(doc, Path(args.ideal).resolve().parent)
    report = validate_chain(chain)
    result = decomposed_state_polytope(chain, args.m, _budget(args))
    tau = tau_vector(chain.block_spec(), args.m)
    payload = _state_payload(result)
    payload["tau"] = list(tau.tau)
    payload["mixed_monomial_count"] = tau.mixed_monomial_count
    return CommandResult(
        command="chain-state",
        input_digest=_digest("chain-state", args, [args.ideal]),
        payload=payload,
        warnings=tuple(report.warnings),
        format=args.format,
        exit_code=EXIT_OK if result.complete else EXIT_BUDGET,
    )


def _cmd_tau(args: argparse.Namespace) -> CommandResult:
    blocks = parse_int_vector(args.blocks)
    if args.nvars is not None and args.nvars != blocks[-1] + 1:
        raise ValueError(
            f"--nvars {args.nvars} disagrees with blocks ending at {blocks[-1]}"
        )
    tau = tau_vector(blocks, args.m)
    payload = {
        "m": args.m,
        "blocks": list(blocks),
        "tau": list(tau.tau),
        "mixed_monomial_count": tau.mixed_monomial_count,
    }
    return CommandResult(
        command="tau",
        input_digest=_digest("tau", args, []),
        payload=payload,
        format=args.format,
    )


def _cmd_decompose_point(args: argparse.Namespace) -> CommandResult:
    blocks = parse_int_vector(args.blocks)
    point = parse_vector(args.point)
    levels = parse_vector(args.levels)
    summands = barycenter_decompose(point, blocks, levels)
    payload = {
        "blocks": list(blocks),
        "point": _json_vector(point),
        "levels": _json_vector(levels),
        "summands": [_json_vector(s) for s in summands],
    }
    return CommandResult(
        command="decompose-point",
        input_digest=_digest("decompose-point", args, []),
        payload=payload,
        format=args.format,
    )


def _cmd_contains(args: argparse.Namespace) -> CommandResult:
    poly = load_polytope(args.polytope)
    point = parse_vector(args.point)
    hull = member_convex_hull(poly.vertices, point)
    payload = {
        "point": _json_vector(point),
        "inside": hull.inside,
        "coefficients": _json_vector(hull.coefficients) if hull.coefficients else None,
        "separator": list(hull.separator) if hull.separator else None,
    }
    return CommandResult(
        command="contains",
        input_digest=_digest("contains", args, [args.polytope]),
        payload=payload,
        format=args.format,
    )


def _cmd_semistable(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    warnings: list[str] = [
        "the barycenter uses the supplied degree's slice counts as-is"
    ]
    if doc.blocks is not None:
        chain = _chain_from_file(doc, Path(args.ideal).resolve().parent)
        warnings.extend(validate_chain(chain).warnings)
        report = semistability_via_components(chain, args.m, _budget(args))
        payload = {
            "route": "components",
            "m": report.m,
            "q": report.q,
            "tau": list(report.tau),
            "barycenter": _json_vector(report.barycenter),
            "levels": _json_vector(report.levels),
            "summands": [_json_vector(s) for s in report.summands],
            "components": [
                {
                    "index": c.index + 1,
                    "inside": c.inside,
                    "summand": _json_vector(c.summand),
                }
                for c in report.components
            ],
            "member_of_hull": report.member_of_hull,
        }
    else:
        ideal = _single_ideal(doc)
        warnings.extend(_homogeneity_warnings(ideal))
        result = enumerate_state_polytope(ideal, args.m, _budget(args))
        if not result.complete:
            return CommandResult(
                command="semistable",
                input_digest=_digest("semistable", args, [args.ideal]),
                payload=_state_payload(result),
                warnings=tuple(warnings),
                format=args.format,
                exit_code=EXIT_BUDGET,
            )
        report = semistability_report(result, n=args.n)
        payload = {
            "route": "direct",
            "m": report.m,
            "q": report.q,
            "barycenter": _json_vector(report.barycenter),
            "member_of_hull": report.member_of_hull,
            "relative_interior": report.relative_interior,
            "coefficients": (
                _json_vector(report.coefficients) if report.coefficients else None
            ),
            "separator": list(report.separator) if report.separator else None,
        }
    return CommandResult(
        command="semistable",
        input_digest=_digest("semistable", args, [args.ideal]),
        payload=payload,
        warnings=tuple(warnings),
        format=args.format,
    )


def _cmd_hm(args: argparse.Namespace) -> CommandResult:
    doc = _load_ideal_file(args.ideal)
    if args.weights is not None:
        rho = parse_vector(args.weights)
    elif doc.weights is not None:
        rho = doc.weights
    else:
        raise ValueError("hm needs --weights or a 'weights:' line in the ideal file")
    if doc.blocks is not None and doc.section_count() > 1:
        chain = _chain_from_file(doc, Path(args.ideal).resolve().parent)
        report = hm_index_decomposed(chain, args.m, rho)
    else:
        report = hm_index_direct(_single_ideal(doc), args.m, rho)
    payload = {
        "m": report.m,
        "mu": scalar_to_json(report.mu),
        "standard_weight_sum": scalar_to_json(report.standard_weight_sum),
        "p_value": report.p_value,
        "weight_total": scalar_to_json(report.weight_total),
    }
    if report.components is not None:
        payload["junction_term"] = scalar_to_json(report.junction_term)
        payload["components"] = [
            {
                "index": c.index + 1,
                "mu": scalar_to_json(c.mu),
                "p_value": c.p_value,
                "weight_total": scalar_to_json(c.weight_total),
                "correction": scalar_to_json(c.correction),
            }
            for c in report.components
        ]
    return CommandResult(
        command="hm",
        input_digest=_digest("hm", args, [args.ideal]),
        payload=payload,
        format=args.format,
    )


def _cmd_rosary(args: argparse.Namespace) -> CommandResult:
    spec = RosarySpec(args.r)
    what = args.what
    if what == "wtable":
        rows = rosary_w_table(args.r)
        payload = {
            "columns": ["r", "w2_closed", "w2_rec", "w3_closed", "w3_rec", "agree"],
            "rows": rows,
        }
        fmt = args.format or "csv"
    elif what == "component":
        if args.l is None:
            raise ValueError("rosary --what component needs --l")
        ideal = rosary_component_ideal(args.l, spec)
        names = [f"x{i}" for i in range(spec.arity)]
        payload = {
            "l": args.l,
            "generators": [format_polynomial(g, names) for g in ideal.generators],
        }
        fmt = args.format or "json"
    elif what == "check":
        if args.d is None:
            raise ValueError("rosary --what check needs --d")
        ends = rosary_end_conics(spec)
        assembled = rosary_assembled_ideal(spec, ends)
        order = named_order("lex", spec.arity)
        report = rosary_slice_decomposition_check(
            spec, order, args.d, assembled, ends
        )
        payload = {
            "r": report.r,
            "d": report.d,
            "left_side": [_json_monomial(m) for m in report.left_side],
            "right_side": [_json_monomial(m) for m in report.right_side],
            "missing": [_json_monomial(m) for m in report.missing],
            "extra": [_json_monomial(m) for m in report.extra],
            "ok": report.ok,
        }
        fmt = args.format or "json"
    else:
        raise ValueError(f"unknown rosary request {what!r}")
    return CommandResult(
        command="rosary",
        input_digest=_digest("rosary", args, []),
        payload=payload,
        format=fmt,
    )


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statec",
        description="Exact state-polytope and stability computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=handler)
        p.add_argument("--out", help="write the result to this file")
        p.add_argument(
            "--parallel",
            type=int,
            default=1,
            help="worker bound for independent sub-computations (1 = sequential)",
        )
        return p

    def add_format(p: argparse.ArgumentParser, default: str | None = "json") -> None:
        p.add_argument("--format", choices=["json", "csv"], default=default)

    p = add("gb", _cmd_gb, help="reduced basis under an order")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order")
    add_format(p)

    p = add("initial", _cmd_initial, help="initial-ideal generators")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order")
    add_format(p)

    p = add("state", _cmd_state, help="enumerate a state polytope")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int)
    add_format(p)

    p = add("intersect", _cmd_intersect, help="intersect the file's ideals")
    p.add_argument("--ideal", required=True)
    add_format(p)

    p = add("eliminate", _cmd_eliminate, help="eliminate all but the kept coordinates")
    p.add_argument("--ideal", required=True)
    p.add_argument("--keep", required=True, help="comma-separated coordinates to keep")
    add_format(p)

    p = add("implicitize", _cmd_implicitize, help="kernel of a parametrization")
    p.add_argument("--ideal", required=True, help="file whose ideal section lists the forms")
    p.add_argument("--nvars", type=int, help="expected number of target variables")
    add_format(p)

    p = add("chain-state", _cmd_chain_state, help="state polytope via block components")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int)
    add_format(p)

    p = add("tau", _cmd_tau, help="translation vector of a block chain")
    p.add_argument("--blocks", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nvars", type=int)
    add_format(p)

    p = add("decompose-point", _cmd_decompose_point, help="split a point into block summands")
    p.add_argument("--blocks", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--levels", required=True, help="coordinate sum per block")
    add_format(p)

    p = add("contains", _cmd_contains, help="convex-hull membership for a stored polytope")
    p.add_argument("--polytope", required=True)
    p.add_argument("--point", required=True)
    add_format(p)

    p = add("semistable", _cmd_semistable, help="barycenter membership verdict")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, help="projective ambient dimension (defaults to arity - 1)")
    p.add_argument("--budget", type=int)
    add_format(p)

    p = add("hm", _cmd_hm, help="weight pairing of a diagonal subgroup")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--weights", help="comma-separated rationals")
    add_format(p)

    p = add("rosary", _cmd_rosary, help="rosary tables, components, slice checks")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--what", choices=["wtable", "component", "check"], default="wtable")
    p.add_argument("--l", type=int)
    p.add_argument("--d", type=int)
    add_format(p, default=None)

    return parser


def run_command(argv: Sequence[str]) -> CommandResult:
    """Parse arguments, dispatch, and return the result document."""
    args = _build_parser().parse_args(list(argv))
    if args.parallel is not None and args.parallel < 1:
        raise ValueError("--parallel must be at least 1")
    result = args.func(args)
    return dataclasses.replace(result, out=args.out)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        result = run_command(argv)
        text = result.rendered()
        if result.out:
            Path(result.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ExtremalityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
