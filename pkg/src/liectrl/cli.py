"""Command-line interface: ``liectrl <command> ...``.

Exit codes: 0 analysis completed, 2 invalid input, 3 resource cap,
4 numerical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import jsonschema
import numpy as np

from . import catalog, fermion
from .bilinear_form import classify_form
from .closure import lie_closure
from .decide import (
    COND_CATALOG,
    COND_CENTRALISER,
    COND_CONNECTED,
    COND_FORM,
    MODEL_FAMILIES,
    AssessOptions,
    ModelSpec,
    Verdict,
    assess,
    check_simulates,
    make_model,
)
from .graph import GraphError, coupling_graph, direct_connectivity, is_connected_graph, weak_connectivity
from .matrep import DEFAULT_TOL, KRON_CAP, NumericalInconsistency, ResourceCapError
from .pauli import PauliExpr
from .symmetry import centraliser, tensor_square_commutant_dim
from .system import ControlSystem, TensorStructure

log = logging.getLogger("liectrl")

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_NUMERIC = 0, 2, 3, 4

_TERM = {
    "type": "object",
    "required": ["coeff", "pauli"],
    "additionalProperties": False,
    "properties": {
        "coeff": {"oneOf": [{"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$"}, {"type": "integer"}]},
        "pauli": {"type": "string", "pattern": "^[IXYZixyz]+$"},
    },
}
SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["n", "drift", "controls"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "drift": {"type": "array", "items": _TERM},
        "controls": {"type": "array", "items": {"type": "array", "items": _TERM}},
        "label": {"type": "string"},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
    },
}

CONDITION_TEXT = {
    COND_CENTRALISER: "the centraliser is not trivial (the action is reducible)",
    COND_CONNECTED: "the control system is not connected",
    COND_FORM: "an invariant bilinear form exists (orthogonal or symplectic type)",
    COND_CATALOG: "the algebra is a proper unitary subalgebra from the catalog",
}


class InputError(ValueError):
    pass


# ------------------------------------------------------------ system files


def system_from_json(doc: dict) -> ControlSystem:
    try:
        jsonschema.validate(doc, SYSTEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}") from None
    n = doc["n"]
    try:
        drift = PauliExpr.from_json(doc["drift"], n)
        controls = [PauliExpr.from_json(c, n) for c in doc["controls"]]
    except ZeroDivisionError:
        raise InputError("coefficient with zero denominator") from None
    structure = TensorStructure(tuple(doc["dims"])) if "dims" in doc else None
    return ControlSystem(n, drift, controls, doc.get("label", ""), structure)


def system_to_json(system: ControlSystem) -> dict:
    out = {
        "n": system.n,
        "drift": system.drift.to_json(),
        "controls": [c.to_json() for c in system.controls],
        "label": system.label,
    }
    if system.dims != (2,) * system.n:
        out["dims"] = list(system.dims)
    return out


def parse_system(path: str | Path) -> ControlSystem:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return system_from_json(doc)


def write_system(system: ControlSystem, path: str | None):
    text = json.dumps(system_to_json(system), indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --------------------------------------------------------------- rendering


def render_report(verdict: Verdict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(verdict.to_json(), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"system: {verdict.label or '(unnamed)'}  n={verdict.n}  N={verdict.N}"]
    lines.append(f"centraliser dim: {verdict.centraliser_dim} (commutant dim {verdict.commutant_dim})")
    conn = {True: "yes", False: "no", None: "undetermined"}[verdict.connected]
    lines.append(f"connected: {conn} (via {verdict.connectivity_method})")
    f = verdict.form
    extra = "" if f.exclusive else f" (non-exclusive, kinds {sorted(f.kinds)})"
    sign = "" if f.s_sbar_sign is None else f", S conj(S) = {f.s_sbar_sign:+d}"
    lines.append(f"invariant form: {f.kind}{sign}{extra}")
    if verdict.tensor_square_dim is not None:
        lines.append(f"tensor-square commutant dim: {verdict.tensor_square_dim}")
    if verdict.closure_dim is not None:
        lines.append(f"closure dim: {verdict.closure_dim} (su(N) has {verdict.N ** 2 - 1})")
    if verdict.identified is not None:
        lines.append(f"identified: {verdict.identified.label()} [{verdict.identified.confidence}]")
    for c in verdict.failed_conditions:
        lines.append(f"condition ({c}) fails: {CONDITION_TEXT[c]}")
    if verdict.fully_controllable is True:
        lines.append("verdict: fully controllable")
    elif verdict.fully_controllable is False:
        lines.append("verdict: not fully controllable")
    else:
        lines.append("verdict: undecided (necessary conditions hold; run --closure or --tensor-square)")
    for note in verdict.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _matrix_json(m: np.ndarray) -> dict:
    m = np.round(np.asarray(m), 12) + 0.0
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = text
    if getattr(args, "json_out", None):
        Path(args.json_out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    sys.stdout.write(out)


# ----------------------------------------------------------------- commands


def cmd_closure(args) -> int:
    system = parse_system(args.system)
    basis = lie_closure(system.generators(), dim_cap=args.dim_cap, strategy=args.strategy)
    payload = {
        "dim": basis.dim, "closed": basis.closed, "capped": basis.capped,
        "basis": [e.to_json() for e in basis.elements],
    }
    text = f"closure dim: {basis.dim}{' (capped)' if basis.capped else ''}\n"
    if args.show_basis:
        text += "".join(f"  {e.to_text()}\n" for e in basis.elements)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    system = parse_system(args.system)
    gens = system.generators()
    rep = centraliser(gens, args.tol)
    if args.tensor_square:
        rep = replace(rep, tensor_square_commutant_dim=tensor_square_commutant_dim(gens, args.tol, cap=args.cap))
    text = f"centraliser dim: {rep.centraliser_dim}\ncommutant dim: {rep.commutant_dim}\nirreducible: {rep.irreducible}\n"
    if rep.tensor_square_commutant_dim >= 0:
        text += f"tensor-square commutant dim: {rep.tensor_square_commutant_dim}\n"
    for b in rep.centraliser_basis:
        if isinstance(b, PauliExpr):
            text += f"  {b.to_text()}\n"
    _emit(args, rep.to_json(), text)
    return EXIT_OK


def cmd_form(args) -> int:
    system = parse_system(args.system)
    gens = system.generators()
    irreducible = centraliser(gens, args.tol).irreducible if system.n <= 8 else None
    res = classify_form(gens, irreducible=irreducible or None, tol=args.tol)
    payload = res.to_json(include_matrix=True)
    text = f"kind: {res.kind}\n"
    if res.s_sbar_sign is not None:
        text += f"S conj(S) sign: {res.s_sbar_sign:+d}\nresidual: {res.residual:.3e}\n"
        if system.N <= 8:
            text += "S (real part):\n" + np.array2string(np.round(res.S.real, 6)) + "\n"
    if not res.exclusive:
        text += f"solution space dim {res.kernel_dim}, kinds {sorted(res.kinds)}\n"
    if args.out and res.S is not None:
        Path(args.out).write_text(json.dumps(_matrix_json(res.S)) + "\n")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_graph(args) -> int:
    system = parse_system(args.system)
    if args.dims:
        system = system.with_structure([int(d) for d in args.dims.split(",")])
    payload: dict = {"dims": list(system.dims)}
    text = ""
    try:
        g = coupling_graph(system)
        payload["coupling_graph"] = {"edges": [[a, b, list(t)] for (a, b), t in sorted(g.edges.items())]}
        payload["graph_connected"] = is_connected_graph(g)
        text += f"coupling graph connected: {payload['graph_connected']}\n"
        if args.dot:
            Path(args.dot).write_text(g.to_dot())
    except GraphError as exc:
        payload["coupling_graph"] = None
        text += f"no coupling graph: {exc}\n"
    if args.closure:
        basis = lie_closure(system.generators())
        weak = weak_connectivity(system, basis)
        general = weak_connectivity(system, basis, system.structure.prime_refinement())
        direct = direct_connectivity(system, basis)
        payload.update(
            weakly_connected=weak.value, weak_partial=weak.partial, weak_failing_cut=weak.failing_cut,
            connected_general=general.value, directly_connected=direct.value,
        )
        text += f"weakly connected: {weak.value}"
        text += f" (no element crosses the cut {weak.failing_cut})\n" if weak.failing_cut else "\n"
        text += f"connected (prime refinement): {general.value}\ndirectly connected: {direct.value}\n"
    _emit(args, payload, text)
    return EXIT_OK


def _catalog_overview(args) -> int:
    top = args.top_max_dim
    if top < 2:
        raise ValueError("--max-dim must be at least 2")
    if top > catalog.LATTICE_CAP and (args.top_dot or args.top_csv):
        raise ResourceCapError(f"lattices beyond N={catalog.LATTICE_CAP} are not built")
    if args.top_dot or args.top_csv:
        lattices = [catalog.build_lattice(n) for n in range(2, top + 1)]
        if args.top_dot:
            Path(args.top_dot).write_text("".join(lat.to_dot() for lat in lattices))
        if args.top_csv:
            rows = [lat.to_csv().split("\r\n", 1) for lat in lattices]
            Path(args.top_csv).write_text(rows[0][0] + "\r\n" + "".join(body for _, body in rows), newline="")
    recs = catalog.enumerate_irreps(top)
    _emit(args, {"irreps": [r.to_json() for r in recs]}, "".join(f"{r.dim:>5}  {r.label()}\n" for r in recs))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.catalog_cmd is None:
        return _catalog_overview(args)
    if args.catalog_cmd == "irreps":
        recs = catalog.enumerate_irreps(args.max_dim)
        if args.csv:
            sys.stdout.write(catalog.records_to_csv(recs))
            return EXIT_OK
        _emit(args, {"irreps": [r.to_json() for r in recs]}, "".join(f"{r.dim:>5}  {r.label()}\n" for r in recs))
        return EXIT_OK
    if args.catalog_cmd == "lattice":
        lat = catalog.build_lattice(args.N, cap=args.lattice_cap)
        if args.dot:
            sys.stdout.write(lat.to_dot())
            return EXIT_OK
        if args.csv:
            sys.stdout.write(lat.to_csv())
            return EXIT_OK
        edges = sorted(lat.labelled_edges())
        _emit(args, {"edges": [list(e) for e in edges]}, "".join(f"{a}  <  {b}\n" for a, b in edges))
        return EXIT_OK
    alg = catalog.parse_algebra(args.algebra)
    weight = [int(v) for v in args.weight.split(",")]
    rec = catalog.IrrepRecord.make(alg, weight)
    _emit(args, rec.to_json(), f"{rec.label()}  dim {rec.dim}\n")
    return EXIT_OK


def cmd_fermion(args) -> int:
    system = fermion.fermion_system(args.kind, args.d, args.t)
    write_system(system, args.output)
    return EXIT_OK


def cmd_model(args) -> int:
    system = make_model(ModelSpec(args.family, args.n))
    write_system(system, args.output)
    return EXIT_OK


def _options(args) -> AssessOptions:
    return AssessOptions(
        closure=True if args.closure else None,
        tensor_square=True if args.tensor_square else None,
        tol=args.tol,
        tensor_square_cap=args.cap,
    )


def cmd_assess(args) -> int:
    verdict = assess(parse_system(args.system), _options(args))
    if args.json_out:
        Path(args.json_out).write_text(render_report(verdict, "json"))
    sys.stdout.write(render_report(verdict, args.format))
    return EXIT_OK


def cmd_simulate(args) -> int:
    a, b = parse_system(args.a), parse_system(args.b)
    opts = replace(_options(args), closure=True, tensor_square=False)
    va, vb = assess(a, opts), assess(b, opts)
    res = check_simulates(va.basis, vb.basis, va.identified, vb.identified)
    text = f"relation: {res.relation}" + (" (up to isomorphism)" if res.by_isomorphism else "") + "\n"
    _emit(args, res.to_json(), text)
    return EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--json", dest="json_out", metavar="PATH", help="also write the JSON report here")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative SVD tolerance")
    common.add_argument("--cap", type=int, default=KRON_CAP, help="largest N for dense Kronecker work")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks only")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="liectrl", description="Controllability analysis of bilinear quantum control systems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("closure", parents=[common], help="exact Lie closure")
    s.add_argument("system")
    s.add_argument("--dim-cap", type=int)
    s.add_argument("--strategy", choices=("generators", "full"), default="generators")
    s.add_argument("--show-basis", action="store_true")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("symmetry", parents=[common], help="centraliser and tensor-square commutant")
    s.add_argument("system")
    s.add_argument("--tensor-square", action="store_true")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("form", parents=[common], help="invariant bilinear form")
    s.add_argument("system")
    s.add_argument("--out", help="write S as a JSON matrix")
    s.set_defaults(func=cmd_form)

    s = sub.add_parser("graph", parents=[common], help="coupling graph and connectivity")
    s.add_argument("system")
    s.add_argument("--dims", help="comma-separated local dimensions, e.g. 4,2")
    s.add_argument("--dot", help="write the coupling graph in DOT format")
    s.add_argument("--closure", action="store_true", help="closure-based connectivity notions")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("catalog", parents=[common], help="irreps of simple Lie algebras")
    s.add_argument("--max-dim", dest="top_max_dim", type=int, default=16, help="list irreps up to this dimension")
    s.add_argument("--dot", dest="top_dot", metavar="PATH", help="write the lattices for N <= max-dim as DOT")
    s.add_argument("--csv", dest="top_csv", metavar="PATH", help="write the lattice rows for N <= max-dim as CSV")
    csub = s.add_subparsers(dest="catalog_cmd")
    c = csub.add_parser("irreps", parents=[common])
    c.add_argument("--max-dim", type=int, default=16)
    c.add_argument("--csv", action="store_true")
    c = csub.add_parser("lattice", parents=[common])
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--dot", action="store_true")
    c.add_argument("--csv", action="store_true")
    c.add_argument("--lattice-cap", type=int, default=catalog.LATTICE_CAP)
    c = csub.add_parser("dim", parents=[common])
    c.add_argument("--algebra", required=True, help="e.g. su(3), so(10), sp(2), g2")
    c.add_argument("--weight", required=True, help="comma-separated Dynkin labels")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("fermion", parents=[common], help="Jordan-Wigner model systems")
    s.add_argument("kind", choices=fermion.QUADRATIC_FAMILIES + ("hubbard", "hubbard-spin"))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--t", default="1")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_fermion)

    s = sub.add_parser("model", parents=[common], help="spin-chain model systems")
    s.add_argument("family", choices=MODEL_FAMILIES)
    s.add_argument("--n", type=int, help="chain length (k for the ising families)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("assess", parents=[common], help="full controllability verdict")
    s.add_argument("system")
    s.add_argument("--closure", action="store_true")
    s.add_argument("--tensor-square", action="store_true")
    s.set_defaults(func=cmd_assess)

    s = sub.add_parser("simulate", parents=[common], help="can system a simulate system b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--closure", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("--tensor-square", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    random.seed(args.seed)
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"liectrl: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NumericalInconsistency as exc:
        print(f"liectrl: numerical inconsistency: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"liectrl: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
