"""Command-line surface.

Every subcommand prints a human-readable report by default and canonical
JSON (sorted keys, sorted lists) with --json.  Inline values and file
paths are both accepted for --expr/--f/--ideal/--module; when a value
names an existing file, the file wins and a warning goes to stderr.

Exit codes: 0 success, 1 corpus failures, 2 usage errors, 3 resource-cap
errors, 4 invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CartierError, DomainError, InvariantViolation, ResourceError, UsageError
from .field import FieldSpec
from .poly import Ideal, PolyRing
from .operators import CartierOperator, IdealModule
from .semilinear import SemilinearModule
from . import crystal

SUBCOMMANDS = (
    "field-info",
    "semilinear-analyze",
    "semilinear-hom",
    "semilinear-lattice",
    "crystal-minimal",
    "crystal-quasilength",
    "poly-cartier",
    "poly-image",
    "poly-stable-image",
    "poly-smallest",
    "poly-compatible",
    "poly-enum-compatible",
    "poly-split",
    "poly-supp",
    "corpus-run",
)


def _resolve(value: str | None) -> str | None:
    """Treat the value as a file path when one exists, else as inline text."""
    if value is None:
        return None
    if os.path.isfile(value):
        print(f"warning: reading {value!r} as a file", file=sys.stderr)
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read().strip()
    return value


def _field_from_args(args) -> FieldSpec:
    modulus = None
    if args.modulus:
        modulus = [int(c) for c in args.modulus.split(",")]
    return FieldSpec(args.p, args.d, modulus, args.e)


def _ring_from_args(args) -> PolyRing:
    if not args.vars:
        raise UsageError("--vars is required for ring commands")
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    return PolyRing(_field_from_args(args), names)


def _operator_from_args(args) -> CartierOperator:
    ring = _ring_from_args(args)
    f = _resolve(args.f)
    if f is None:
        raise UsageError("--f (the operator multiplier) is required")
    return CartierOperator(ring, ring.parse(f), args.e)


def _ideal_from_args(args, ring: PolyRing) -> Ideal:
    raw = _resolve(args.ideal)
    if raw is None:
        raise UsageError("--ideal is required")
    raw = raw.strip()
    if raw.startswith('["') or raw == "[]":
        gens = json.loads(raw)
    else:
        gens = [g for g in raw.split(";")]
    gens = [g.strip() for g in gens if g.strip()]
    return Ideal(ring, tuple(ring.parse(g) for g in gens))


def _module_from_args(modules: list, index: int = 0) -> SemilinearModule:
    if len(modules) <= index:
        raise UsageError("--module is required")
    text = _resolve(modules[index])
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"module JSON is malformed: {exc}") from exc
    return SemilinearModule.from_json(data)


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


# ----------------------------------------------------------------------
# subcommand handlers


def _cmd_field_info(args):
    spec = _field_from_args(args)
    payload = {
        "p": spec.p,
        "d": spec.d,
        "e": spec.e,
        "q": spec.q,
        "order": spec.order,
        "modulus": list(spec.modulus),
    }
    lines = [
        f"field GF({spec.p}^{spec.d}), order {spec.order}",
        f"twist e={spec.e}, q={spec.q}",
        f"modulus {list(spec.modulus)}",
    ]
    _emit(args, payload, lines)


def _cmd_semilinear_analyze(args):
    module = _module_from_args(args.module)
    dec = module.decompose()
    fixed = module.fixed_points()
    payload = {
        "dim": module.dim,
        "nilord": dec.nilord,
        "nilpotent": dec.nilord is not None,
        "v_nil": dec.v_nil.to_json(),
        "v_underline": dec.v_underline.to_json(),
        "fixed_points": {
            "q": module.spec.q,
            "dim": len(fixed),
            "basis": [[list(x.coeffs) for x in v] for v in fixed],
        },
    }
    lines = [
        f"dim {module.dim}",
        f"nilord {dec.nilord if dec.nilord is not None else 'not nilpotent'}",
        f"dim V_nil {dec.v_nil.dim}, dim V_underline {dec.v_underline.dim}",
        f"fixed points: F_{module.spec.q}-dimension {len(fixed)}",
    ]
    _emit(args, payload, lines)


def _cmd_semilinear_hom(args):
    if len(args.module) < 2:
        raise UsageError("semilinear-hom needs --module twice (source, target)")
    source = _module_from_args(args.module, 0)
    target = _module_from_args(args.module, 1)
    hom = source.hom_space(target)
    payload = {
        "q": hom.q,
        "dim": hom.dim,
        "size": hom.size,
        "basis": [
            [[list(x.coeffs) for x in row] for row in phi] for phi in hom.basis
        ],
    }
    _emit(args, payload, [f"Hom: F_{hom.q}-dimension {hom.dim}, {hom.size} elements"])


def _cmd_semilinear_lattice(args):
    module = _module_from_args(args.module)
    infos = module.enumerate_submodules(cap=args.cap)
    payload = {
        "count": len(infos),
        "submodules": [
            {**info.subspace.to_json(), "surjective": info.surjective}
            for info in infos
        ],
    }
    lines = [f"{len(infos)} stable subspaces"] + [
        f"  dim {i.subspace.dim} surjective={i.surjective}" for i in infos
    ]
    _emit(args, payload, lines)


def _cmd_crystal_minimal(args):
    module = _module_from_args(args.module)
    rep = crystal.minimal_rep(module)
    payload = {"original_dim": module.dim, "minimal": rep.to_json()}
    _emit(args, payload, [f"minimal representative dimension {rep.dim}"])


def _cmd_crystal_quasilength(args):
    module = _module_from_args(args.module)
    report = crystal.jordan_holder(module, cap=args.cap)
    payload = {
        "quasi_length": report.quasi_length,
        "lattice_size": len(report.lattice),
        "factor_dims": list(report.factor_dims),
        "minimal_dim": report.minimal_rep.dim,
        "edges": [list(e) for e in report.edges],
    }
    lines = [
        f"quasi-length {report.quasi_length}",
        f"lattice size {len(report.lattice)}",
        f"factor dims {list(report.factor_dims)}",
    ]
    _emit(args, payload, lines)


def _cmd_poly_cartier(args):
    ring = _ring_from_args(args)
    expr = _resolve(args.expr)
    if expr is None:
        raise UsageError("--expr is required")
    from .operators import cartier_std

    result = cartier_std(ring.parse(expr), args.e)
    _emit(args, {"result": str(result)}, [str(result)])


def _cmd_poly_image(args):
    op = _operator_from_args(args)
    ideal = _ideal_from_args(args, op.ring)
    image = op.image_ideal(ideal)
    payload = {"generators": image.canonical_strings()}
    _emit(args, payload, [", ".join(image.canonical_strings()) or "0"])


def _cmd_poly_stable_image(args):
    op = _operator_from_args(args)
    ideal = _ideal_from_args(args, op.ring) if args.ideal else None
    stable, iterations = op.stable_image(ideal, cap=args.cap)
    payload = {
        "generators": stable.canonical_strings(),
        "iterations": iterations,
    }
    _emit(
        args,
        payload,
        [f"stable after {iterations} steps: "
         f"{', '.join(stable.canonical_strings()) or '0'}"],
    )


def _cmd_poly_smallest(args):
    op = _operator_from_args(args)
    seed = _ideal_from_args(args, op.ring)
    result = op.smallest_stable_containing(seed, cap=args.cap)
    payload = {"generators": result.canonical_strings()}
    _emit(args, payload, [", ".join(result.canonical_strings()) or "0"])


def _cmd_poly_compatible(args):
    op = _operator_from_args(args)
    ideal = _ideal_from_args(args, op.ring)
    payload = {
        "compatible": op.is_compatible(ideal),
        "fixed": op.is_fixed(ideal),
    }
    _emit(
        args,
        payload,
        [f"compatible: {payload['compatible']}", f"fixed: {payload['fixed']}"],
    )


def _cmd_poly_enum_compatible(args):
    op = _operator_from_args(args)
    ideals = op.enumerate_compatible_monomial(cap=args.cap)
    payload = {
        "count": len(ideals),
        "ideals": [i.canonical_strings() for i in ideals],
    }
    lines = [f"{len(ideals)} compatible ideals"] + [
        "  (" + (", ".join(i.canonical_strings()) or "0") + ")" for i in ideals
    ]
    _emit(args, payload, lines)


def _cmd_poly_split(args):
    op = _operator_from_args(args)
    witness = op.find_splitting()
    payload = {
        "split": witness is not None,
        "witness": None if witness is None else str(witness),
    }
    lines = [f"split: {payload['split']}"]
    if witness is not None:
        lines.append(f"witness: {witness}")
    _emit(args, payload, lines)


def _cmd_poly_supp(args):
    op = _operator_from_args(args)
    ideal = _ideal_from_args(args, op.ring)
    module = IdealModule(op, ideal)
    nilpotent, order = module.nilpotence(cap=args.cap)
    report = module.supp_crys(cap=args.cap)
    payload = {
        "annihilator": report.ann.canonical_strings(),
        "iterations": report.iterations,
        "nilpotent": nilpotent,
        "nilpotence_order": order,
    }
    lines = [
        f"annihilator: {', '.join(report.ann.canonical_strings()) or '0'}",
        f"nilpotent: {nilpotent}"
        + (f" (order {order})" if order is not None else ""),
    ]
    _emit(args, payload, lines)


def _cmd_corpus_run(args):
    with open(args.corpus, "r", encoding="utf-8") as fh:
        cases = json.load(fh)
    results = []
    failed = 0
    for case in cases:
        name = case["name"]
        argv = list(case["argv"])
        from io import StringIO

        buf = StringIO()
        old = sys.stdout
        sys.stdout = buf
        try:
            code = run(argv)
        finally:
            sys.stdout = old
        got = None
        status = "PASS"
        detail = ""
        if code != case.get("exit", 0):
            status = "FAIL"
            detail = f"exit {code}"
        else:
            try:
                got = json.loads(buf.getvalue())
            except json.JSONDecodeError:
                got = buf.getvalue().strip()
            if got != case["expect"]:
                status = "FAIL"
                detail = f"got {got!r}"
        if status == "FAIL":
            failed += 1
        results.append({"name": name, "status": status, "detail": detail})
    if args.json:
        print(
            json.dumps(
                {
                    "results": results,
                    "passed": len(results) - failed,
                    "failed": failed,
                },
                sort_keys=True,
                indent=2,
            )
        )
    else:
        width = max((len(r["name"]) for r in results), default=0)
        for r in results:
            suffix = f"  ({r['detail']})" if r["detail"] else ""
            print(f"{r['name']:<{width}}  {r['status']}{suffix}")
        print(f"{len(results) - failed}/{len(results)} passed")
    return 1 if failed else 0


# ----------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartier",
        description="Exact computations with q^(-1)-linear operators "
        "over finite fields and polynomial rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ring=False, module=False, cap_default=100_000):
        p.add_argument("--p", type=int, default=2, help="prime characteristic")
        p.add_argument("--d", type=int, default=1, help="field degree over F_p")
        p.add_argument("--modulus", type=str, default=None,
                       help="comma-separated modulus coefficients, low degree first")
        p.add_argument("--e", type=int, default=1, help="twist exponent (q = p^e)")
        if ring:
            p.add_argument("--vars", type=str, default=None,
                           help="comma-separated variable names")
            p.add_argument("--f", type=str, default=None,
                           help="operator multiplier (inline or file)")
            p.add_argument("--ideal", type=str, default=None,
                           help="semicolon-separated generators, JSON list, or file")
            p.add_argument("--expr", type=str, default=None,
                           help="polynomial expression (inline or file)")
        if module:
            p.add_argument("--module", type=str, action="append", default=[],
                           help="module JSON (inline or file); repeatable")
        p.add_argument("--cap", type=int, default=cap_default,
                       help="resource cap for enumerations and chains")
        p.add_argument("--jobs", type=int, default=1,
                       help="reserved; outputs are schedule-independent")
        p.add_argument("--json", action="store_true", help="canonical JSON output")

    handlers = {}

    p = sub.add_parser("field-info", help="describe a field spec")
    common(p)
    handlers["field-info"] = _cmd_field_info

    p = sub.add_parser("semilinear-analyze", help="decomposition and fixed points")
    common(p, module=True)
    handlers["semilinear-analyze"] = _cmd_semilinear_analyze

    p = sub.add_parser("semilinear-hom", help="Hom-space between two modules")
    common(p, module=True)
    handlers["semilinear-hom"] = _cmd_semilinear_hom

    p = sub.add_parser("semilinear-lattice", help="all stable subspaces")
    common(p, module=True)
    handlers["semilinear-lattice"] = _cmd_semilinear_lattice

    p = sub.add_parser("crystal-minimal", help="minimal representative")
    common(p, module=True)
    handlers["crystal-minimal"] = _cmd_crystal_minimal

    p = sub.add_parser("crystal-quasilength", help="quasi-length and lattice")
    common(p, module=True)
    handlers["crystal-quasilength"] = _cmd_crystal_quasilength

    for name, handler in (
        ("poly-cartier", _cmd_poly_cartier),
        ("poly-image", _cmd_poly_image),
        ("poly-stable-image", _cmd_poly_stable_image),
        ("poly-smallest", _cmd_poly_smallest),
        ("poly-compatible", _cmd_poly_compatible),
        ("poly-enum-compatible", _cmd_poly_enum_compatible),
        ("poly-split", _cmd_poly_split),
        ("poly-supp", _cmd_poly_supp),
    ):
        p = sub.add_parser(name, help="polynomial-ring operator command")
        common(p, ring=True, cap_default=64 if "image" in name or "supp" in name
               or "smallest" in name else 100_000)
        handlers[name] = handler

    p = sub.add_parser("corpus-run", help="run a corpus of named cases")
    p.add_argument("corpus", help="path to a JSON array of cases")
    p.add_argument("--json", action="store_true")
    handlers["corpus-run"] = _cmd_corpus_run

    parser.set_defaults(_handlers=handlers)
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = args._handlers[args.command]
    try:
        code = handler(args)
        return 0 if code is None else code
    except (UsageError, DomainError) as exc:
        _report_error(args, exc)
        return 2
    except ResourceError as exc:
        _report_error(args, exc)
        return 3
    except InvariantViolation as exc:
        _report_error(args, exc)
        return 4


def _report_error(args, exc: CartierError):
    if getattr(args, "json", False):
        print(
            json.dumps(
                {"error": {"kind": exc.kind, "detail": str(exc)}}, sort_keys=True
            )
        )
    else:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
