"""Command line interface: ``nilorbit <command> [options]``.

Exit codes: 0 success or certified, 1 negative verdict, 2 usage, I/O or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import corpus
from .exact import parse_gaussian
from .hodge import (
    PurityError,
    build_limit_mhs,
    check_kernel_injectivity,
    construct_alpha,
    deligne_splitting,
    is_r_split,
    normalize_iota,
    primitive_decomposition,
    rational_decomposition,
    validate_orbit,
)
from .io import OrbitFileError, canonical_json, load_orbit, orbit_digest, orbit_to_dict, render_text

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

COMMANDS = ("validate", "limit-mhs", "bigrading", "alpha", "estimate-epsilon", "find-accumulation",
            "certify-separation", "perturbation", "lemma25", "sublemma", "example")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _add_orbit(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--orbit", metavar="FILE", help="orbit JSON file")
    g.add_argument("--example", metavar="NAME", help="named corpus example")


def _add_grid(p, y_max: float, r: float = 2.0):
    p.add_argument("--r", type=float, default=r, help="lower edge of the strip (Im z > r)")
    p.add_argument("--y-max", type=float, default=y_max, help="upper edge of the strip")


def _add_common(p):
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="one line per value")
    p.set_defaults(fmt="json")
    p.add_argument("--seed", type=int, default=0, help="random seed (recorded in every report)")
    p.add_argument("--backend", choices=("auto", "cython", "numpy"), default="auto",
                   help="lattice scan kernels")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilorbit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("validate", help="check the defining conditions of an orbit")
    _add_orbit(p)
    _add_common(p)

    p = sub.add_parser("limit-mhs", help="weight filtration and Hodge numbers of the graded pieces")
    _add_orbit(p)
    _add_common(p)

    p = sub.add_parser("bigrading", help="primitive decomposition and bigraded basis")
    _add_orbit(p)
    _add_common(p)

    p = sub.add_parser("alpha", help="rational and Hodge splittings and their discrepancy")
    _add_orbit(p)
    p.add_argument("--normalize", action="store_true", help="keep only the k = 0 components")
    _add_common(p)

    p = sub.add_parser("estimate-epsilon", help="empirical constant of the lower estimate")
    _add_orbit(p)
    p.add_argument("--target", help="invariant target point, e.g. \"(0)\" (default 0)")
    p.add_argument("--bound", type=int, default=20)
    _add_grid(p, 4096.0)
    p.add_argument("--grid-re", type=int, default=8)
    p.add_argument("--grid-y", type=int, default=12)
    p.add_argument("--norm-bound", type=int, default=10, help="box for the minimal lattice norm")
    p.add_argument("--normalize", action="store_true")
    _add_common(p)

    p = sub.add_parser("find-accumulation", help="lattice sections accumulating at a point")
    _add_orbit(p)
    p.add_argument("--target", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--bound", type=int, default=20)
    _add_grid(p, 4096.0)
    _add_common(p)

    p = sub.add_parser("certify-separation", help="no section enters a ball around a point")
    _add_orbit(p)
    p.add_argument("--target", required=True, help="the point p")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--bound", type=int, default=50)
    _add_grid(p, 1e6)
    p.add_argument("--tail", action="store_true",
                   help="add the heuristic large-vector exclusion (Hodge mode only)")
    _add_common(p)

    p = sub.add_parser("perturbation", help="fit the constant of an F^0 perturbation M(t)")
    _add_orbit(p)
    p.add_argument("--mpoly", required=True,
                   help='JSON {"power": matrix}, entries numbers or strings like "1/2+i"')
    p.add_argument("--bound", type=int, default=5)
    _add_grid(p, 4096.0)
    p.add_argument("--grid-re", type=int, default=8)
    p.add_argument("--grid-y", type=int, default=12)
    _add_common(p)

    p = sub.add_parser("lemma25", help="random search against the polynomial boundedness lemma")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--a", default="1")
    p.add_argument("--a-prime", default="1")
    p.add_argument("--eps", type=float, default=0.02)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--C", type=float, help="constant to test; fitted when omitted")
    p.add_argument("--seeds", type=int, default=1, help="also fit on this many consecutive seeds")
    _add_grid(p, 1e4)
    _add_common(p)

    p = sub.add_parser("sublemma", help="only-zero test for the triangular inequalities")
    p.add_argument("--cmat", required=True, help='lower-triangular rows, e.g. "[[],[1.0]]"')
    p.add_argument("--eps2", type=float, help="candidate; without it the largest dyadic value is found")
    _add_common(p)

    p = sub.add_parser("example", help="list or export corpus examples")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit-orbit", action="store_true", help="write the orbit file instead of a report")
    _add_common(p)
    return parser


# -- helpers -------------------------------------------------------------------

def _load(args):
    if args.orbit:
        return load_orbit(args.orbit)
    try:
        return corpus.get_example(args.example)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _complex(text: str) -> complex:
    try:
        return complex(parse_gaussian(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {text!r} as a Gaussian rational: {exc}") from None


def _params(args) -> dict:
    skip = {"command", "out", "fmt", "orbit", "example", "backend"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _grid(args):
    if not hasattr(args, "r"):
        return None
    g = {"r": args.r, "y_max": args.y_max}
    if hasattr(args, "grid_re"):
        g.update(n_re=args.grid_re, n_y=args.grid_y)
    return g


def _report(args, orbit, results: dict, verdict: str) -> dict:
    bounds = {k: getattr(args, k) for k in ("bound", "norm_bound", "trials") if hasattr(args, k)}
    return {
        "command": args.command,
        "input_digest": orbit_digest(orbit) if orbit is not None else None,
        "parameters": {**_params(args), **({"input": {"orbit": args.orbit, "example": args.example}}
                                           if hasattr(args, "orbit") else {})},
        "results": results,
        "provenance": {"seed": args.seed, "grid": _grid(args), "bounds": bounds},
        "verdict": verdict,
    }


def _gm(m):
    return [[str(a) for a in r] for r in m.rows]


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    orbit = _load(args)
    rep = validate_orbit(orbit)
    ok = rep.ok
    return _report(args, orbit, {"checks": rep.as_dict(), "all_pass": ok}, "valid" if ok else "invalid"), ok


def _weight_dict(W):
    return {str(k): W.graded_dim(k) for k in W.indices if W.graded_dim(k)}


def cmd_limit_mhs(args):
    from .hodge import monodromy_weight_filtration

    orbit = _load(args)
    W = monodromy_weight_filtration(orbit.N, orbit.weight)
    results = {"weight_graded_dims": _weight_dict(W),
               "kernel_injective": check_kernel_injectivity(orbit)}
    try:
        mhs = build_limit_mhs(orbit)
    except PurityError as exc:
        results["pure"] = False
        results["purity_failure"] = exc.as_dict()
        return _report(args, orbit, results, "not a mixed Hodge structure"), False
    results["pure"] = True
    results["hodge_numbers"] = {str(k): {f"{p},{q}": h for (p, q), h in sorted(hn.items())}
                                for k, hn in mhs.hodge_numbers().items()}
    results["r_split"] = is_r_split(orbit)
    split = deligne_splitting(orbit, mhs.W)
    results["deligne_dims"] = {f"{p},{q}": s.dim for (p, q), s in sorted(split.items()) if s.dim}
    return _report(args, orbit, results, "mixed Hodge structure"), True


def cmd_bigrading(args):
    orbit = _load(args)
    try:
        bg = primitive_decomposition(build_limit_mhs(orbit))
        mode = "hodge"
    except PurityError:
        bg = rational_decomposition(orbit)
        mode = "rational"
    results = {
        "mode": mode,
        "depth": bg.depth,
        "labels": [list(x) for x in bg.labels],
        "basis": _gm(bg.basis),
        "negative_mask": bg.negative_mask() if bg.has_hodge else None,
    }
    if bg.has_hodge:
        results["hodge_labels"] = [list(x) for x in bg.hodge_labels]
        results["hodge_basis"] = _gm(bg.hodge_basis)
    return _report(args, orbit, results, mode), True


def cmd_alpha(args):
    orbit = _load(args)
    try:
        mhs = build_limit_mhs(orbit)
    except PurityError as exc:
        return _report(args, orbit, {"purity_failure": exc.as_dict()}, "no Hodge splitting"), False
    im = construct_alpha(mhs)
    if args.normalize:
        im = normalize_iota(im)
    viol = im.vanishing_violations()
    results = {
        "alpha_Q": _gm(im.alpha_Q),
        "alpha_C": _gm(im.alpha_C),
        "iota": _gm(im.iota),
        "lattice_index": im.lattice_index,
        "nonzero_components": sorted([list(k) for k, blk in im.components.items() if not blk.is_zero()]),
        "vanishing_violations": [list(v) for v in viol],
    }
    return _report(args, orbit, results, "vanishing holds" if not viol else "vanishing fails"), not viol


def _model(orbit, normalize=False):
    from .estimates import build_section_model

    return build_section_model(orbit, normalize=normalize)


def cmd_estimate_epsilon(args):
    from .estimates import estimate_epsilon, lattice_min_norm, parse_point

    orbit = _load(args)
    model = _model(orbit, args.normalize)
    v = None
    if args.target is not None:
        v = [complex(x) for x in parse_point(args.target, model.out_dim)]
    rep = estimate_epsilon(model, v, args.bound, args.r, args.y_max, args.grid_re, args.grid_y)
    results = rep.as_dict()
    results["lattice_norm"] = lattice_min_norm(model, args.norm_bound).as_dict()
    ok = rep.epsilon > 0
    return _report(args, orbit, results, "positive" if ok else "not positive"), ok


def cmd_find_accumulation(args):
    from .estimates import find_accumulation, verify_witness

    orbit = _load(args)
    model = _model(orbit)
    w = find_accumulation(model, args.target, args.tol, args.bound, args.r, args.y_max)
    if w is None:
        return _report(args, orbit, {"witness": None, "mode": model.mode}, "no accumulation"), False
    results = {"mode": model.mode, "witness": w.as_dict(), "verified": verify_witness(model, w),
               "length": len(w.entries)}
    return _report(args, orbit, results, "accumulation found"), True


def cmd_certify_separation(args):
    from .estimates import certify_separation, estimate_epsilon, lattice_min_norm

    orbit = _load(args)
    model = _model(orbit)
    eps = E = None
    if args.tail:
        model.require_hodge("the heuristic tail")
        eps = estimate_epsilon(model).epsilon
        E = lattice_min_norm(model, 10).E
    rep = certify_separation(model, args.target, args.radius, args.bound, args.r, args.y_max, eps, E)
    results = {"mode": model.mode, **rep.as_dict()}
    return _report(args, orbit, results, "certified" if rep.certified else "not certified"), rep.certified


def _parse_mpoly(text: str, shape):
    from .estimates import PolyMatrix

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--mpoly: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise UsageError('--mpoly must be an object {"power": matrix}')
    powers = {}
    for k, m in doc.items():
        try:
            e = int(k)
        except ValueError:
            raise UsageError(f"--mpoly: power {k!r} is not an integer") from None
        if e < 0:
            raise UsageError("--mpoly: powers must be nonnegative")
        try:
            arr = np.array([[_complex(x) if isinstance(x, str) else complex(x) for x in row] for row in m])
        except TypeError:
            raise UsageError(f"--mpoly: power {k} is not a matrix of numbers") from None
        if arr.shape != shape:
            raise UsageError(f"--mpoly: power {k} has shape {arr.shape}, expected {shape}")
        powers[e] = arr
    if 0 in powers and np.any(powers[0] != 0):
        raise UsageError("--mpoly: M(0) must vanish")
    if not powers or max(powers) < 1:
        powers[1] = np.zeros(shape, dtype=complex)
    return PolyMatrix.from_powers(powers, shape)


def cmd_perturbation(args):
    from .estimates import perturbation_bound_check

    orbit = _load(args)
    model = _model(orbit)
    model.require_hodge("perturbation")
    M = _parse_mpoly(args.mpoly, (model.out_dim, model.phi2.shape[1]))
    rep = perturbation_bound_check(model, M, args.bound, args.r, args.y_max, args.grid_re, args.grid_y)
    return _report(args, orbit, rep.as_dict(), "bounded" if rep.bounded else "unbounded"), rep.bounded


def cmd_polybound(args):
    from .estimates import polybound_harness

    a, a2 = _complex(args.a), _complex(args.a_prime)
    kw = dict(a=a, a2=a2, eps=args.eps, r=args.r, trials=args.trials, y_max=args.y_max)
    first = polybound_harness(args.n, args.n1, args.n2, seed=args.seed, C=args.C, **kw)
    C = args.C if args.C is not None else first.fitted_C
    runs = [first] + [polybound_harness(args.n, args.n1, args.n2, seed=args.seed + i, C=C, **kw)
                      for i in range(1, args.seeds)]
    fits = [r.fitted_C for r in runs]
    results = {
        "runs": [r.as_dict() for r in runs],
        "C": C,
        "fitted_by_seed": fits,
        "drift": (max(fits) / min(fits) - 1) if min(fits) > 0 else None,
        "violations": sum(r.violations for r in runs),
    }
    ok = results["violations"] == 0
    return _report(args, None, results, "no violations" if ok else "violations found"), ok


def cmd_sublemma(args):
    from .estimates.sublemma import find_eps2, parse_cmat, sublemma_report

    try:
        rows = parse_cmat(args.cmat)
    except ValueError as exc:
        raise UsageError(f"--cmat: {exc}") from None
    if args.eps2 is None:
        e = find_eps2(rows)
        results = {"cmat": rows, "largest_dyadic_eps2": e}
        return _report(args, None, results, "found" if e is not None else "none"), e is not None
    if not 0 < args.eps2 < 1:
        raise UsageError("--eps2 must lie in (0, 1)")
    rep = sublemma_report(rows, args.eps2)
    verdict = "only zero" if rep.only_zero else "nonzero solution exists"
    return _report(args, None, rep.as_dict(), verdict), rep.only_zero


def cmd_example(args):
    if args.list or args.name is None:
        names = corpus.example_names()
        results = {"examples": {n: {"parameters": corpus.RECIPES[n].parameters,
                                    "manifest": corpus.RECIPES[n].manifest} for n in names}}
        return _report(args, None, results, "listed"), True
    if args.name not in corpus.RECIPES:
        raise UsageError(f"unknown example {args.name!r}; known: {', '.join(corpus.example_names())}")
    recipe = corpus.RECIPES[args.name]
    orbit = recipe.build()
    if args.emit_orbit:
        return orbit_to_dict(orbit), True
    checks = corpus.check_manifest(recipe)
    ok = all(e == o for e, o in checks.values())
    results = {"orbit": orbit_to_dict(orbit), "parameters": recipe.parameters,
               "manifest": {k: {"expected": e, "observed": o} for k, (e, o) in checks.items()}}
    return _report(args, orbit, results, "manifest holds" if ok else "manifest fails"), ok


HANDLERS = {
    "validate": cmd_validate,
    "limit-mhs": cmd_limit_mhs,
    "bigrading": cmd_bigrading,
    "alpha": cmd_alpha,
    "estimate-epsilon": cmd_estimate_epsilon,
    "find-accumulation": cmd_find_accumulation,
    "certify-separation": cmd_certify_separation,
    "perturbation": cmd_perturbation,
    "lemma25": cmd_polybound,
    "sublemma": cmd_sublemma,
    "example": cmd_example,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_ERROR
    from .estimates import ModeError, NotInvariantTarget, kernels

    try:
        kernels.use_backend(args.backend)
        report, ok = HANDLERS[args.command](args)
    except (UsageError, OrbitFileError, ModeError, NotInvariantTarget) as exc:
        print(f"nilorbit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"nilorbit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"nilorbit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = render_text(report) if args.fmt == "text" else canonical_json(report)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"nilorbit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if ok else EXIT_NEGATIVE


if __name__ == "__main__":
    raise SystemExit(main())
