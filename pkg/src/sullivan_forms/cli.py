"""Command line front end.

Artifacts (family and model files) go to ``--out`` or standard output; the
accompanying human-readable report goes to standard error.  ``verify`` and
``classify`` only produce a report, written to standard output.

Exit codes: 0 success, 2 bad input, 3 group closure exceeded ``--max-order``,
4 degree bound of the model violated, 5 verification or classification failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .cdga import check_d_squared, format_cdga, is_minimal, parse_cdga, parse_morphism
from .errors import (
    DegreeBoundViolated,
    NonHomogeneous,
    NotChainMap,
    OrderBoundExceeded,
    SullivanFormsError,
)
from .families import (
    RealizableFamily,
    format_family,
    g2_family,
    orthogonal_presentation,
    parse_family,
    symmetric_family,
)
from .groups import DEFAULT_MAX_ORDER, group_closure
from .model import ModelSpec, build_model, classify, degree_audit, spec_from_model
from .polycore import format_coefficient, format_poly
from .qmatrix import format_matrix, parse_matrix_list

EXIT_INPUT = 2
EXIT_ORDER = 3
EXIT_DEGREE_BOUND = 4
EXIT_FAILED = 5


class CommandFailed(Exception):
    """A check ran to completion and said no."""


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family_report(fam: RealizableFamily) -> list[str]:
    lines = [
        f"degrees: {', '.join(map(str, fam.degrees()))}",
        f"s: {fam.s}",
        f"d: {fam.d}",
    ]
    if fam.lambdas is not None:
        lines.append("lambda: " + ", ".join(format_coefficient(x) for x in fam.lambdas))
    lines.append(f"q0 = {format_poly(fam.q0)}")
    return lines


def cmd_family(args) -> int:
    gens = parse_matrix_list(_read(args.group_file))
    if not gens:
        raise ValueError("group file contains no matrices")
    G = group_closure(gens, max_order=args.max_order)
    fam, C = orthogonal_presentation(G, prune=not args.no_prune, s=args.s)
    _emit(format_family(fam), args.out)
    if args.basis_out:
        Path(args.basis_out).write_text(format_matrix(C) + "\n")
    report = [f"|G|: {G.order}"] + _family_report(fam) + ["basis change C (x = C v):"]
    report += ["  " + row for row in format_matrix(C).splitlines()]
    print("\n".join(report), file=sys.stderr)
    return 0


def _load_family(path: str) -> RealizableFamily:
    fam = parse_family(_read(path))
    if not isinstance(fam, RealizableFamily):
        raise ValueError(f"{path}: family file has no 's: .. d: ..' trailer")
    return fam


def cmd_model(args) -> int:
    fam = _load_family(args.family_file)
    model = build_model(ModelSpec(fam, args.k))
    _emit(format_cdga(model), args.out)
    spec = model.spec
    print(f"k: {spec.k}\n|z|: {spec.z_degree}\nd^2 = 0: ok\nminimal: ok", file=sys.stderr)
    return 0


def _verify_lines(text: str) -> tuple[list[str], bool]:
    try:
        A = parse_cdga(text)
    except NonHomogeneous as exc:
        return [f"FAIL  degree audit: {exc}"], False
    checks = [
        ("d^2 = 0", check_d_squared(A)),
        ("minimal", is_minimal(A)),
        ("degree audit", degree_audit(A)),
    ]
    lines = []
    for name, res in checks:
        extra = f" (on {res.generator})" if getattr(res, "generator", None) else ""
        lines.append(f"{'PASS' if res else 'FAIL'}  {name}{extra}")
    try:
        spec = spec_from_model(A)
        same = build_model(spec) == A
        lines.append(f"{'PASS' if same else 'FAIL'}  matches M(Q, k) with k = {spec.k}, |z| = {spec.z_degree}")
    except SullivanFormsError as exc:
        same = False
        lines.append(f"FAIL  matches M(Q, k): {exc}")
    return lines, all(r for _, r in checks) and same


def cmd_verify(args) -> int:
    lines, ok = _verify_lines(_read(args.model_file))
    print("\n".join(lines))
    if not ok:
        raise CommandFailed("verification failed")
    return 0


def cmd_classify(args) -> int:
    parsed = parse_cdga(_read(args.model_file))
    model = build_model(spec_from_model(parsed))
    if model != parsed:
        raise CommandFailed("model file is not of the form M(Q, k)")
    f = parse_morphism(_read(args.morphism_file), model)
    result = classify(f)
    sys.stdout.write(result.report())
    if not result.ok:
        raise CommandFailed(result.diagnostic)
    return 0


def cmd_examples(args) -> int:
    if args.name == "sigma_n":
        fam = symmetric_family(args.n, s=args.s)
        note = [f"symmetric group on {args.n} letters"]
    else:
        fam, _, _ = g2_family()
        note = [
            "G2: quadratic and Dickson trilinear forms in v-coordinates",
            "their degrees 2, 3 differ by one, so q1 = f1 * q0^2 is used in place of f1",
        ]
    _emit(format_family(fam), args.out)
    print("\n".join(note + _family_report(fam)), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sullivan-forms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", help="realizable family whose orthogonal group is a given finite group")
    f.add_argument("group_file", help="generator matrices separated by blank lines")
    f.add_argument("--s", type=int, default=None, help="power of q0 closing the family (default: smallest legal)")
    f.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    f.add_argument("--no-prune", action="store_true", help="keep every distinct orbit sum")
    f.add_argument("--basis-out", default=None, help="also write the basis change matrix here")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_family)

    m = sub.add_parser("model", help="minimal Sullivan model of a family")
    m.add_argument("family_file")
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_model)

    v = sub.add_parser("verify", help="check d^2 = 0, minimality and degrees of a model file")
    v.add_argument("model_file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="run the classification pipeline on an automorphism")
    c.add_argument("model_file")
    c.add_argument("morphism_file")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("examples", help="built-in families")
    e.add_argument("name", choices=("sigma_n", "g2"))
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--s", type=int, default=None)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_examples)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrderBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORDER
    except DegreeBoundViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREE_BOUND
    except (CommandFailed, NotChainMap) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (SullivanFormsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
