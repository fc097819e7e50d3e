"""Command-line surface.

Subcommands: decompose, symmetrise, verify-identities, classify,
superselect, coins, bloch, fig3, model, theory, toy-theories.

Exit codes: 0 on success, 1 when a verification fails (a residual exceeds
its tolerance or a certified decomposition cannot be produced), 2 on
usage or input errors.  Output is deterministic: identical argv and seed
give byte-identical bytes, with floats in shortest round-trip form.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import casebook, hilbert, models, sectors, symgroup, symmetriser
from .hilbert import AssemblyConfig


def parse_complex(text: str) -> complex:
    """Accept 1, -2.5, 1+2i, -i, 0.3-0.7j and friends."""
    s = text.strip().lower().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+\-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError as exc:
        raise ValueError(f"cannot parse complex number {text!r}") from exc


def _fmt_complex(z: complex | None) -> list[float] | str:
    return "inf" if z is None else [float(z.real), float(z.imag)]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(obj) -> None:
    print(json.dumps(obj))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_decompose(args) -> int:
    config = AssemblyConfig(args.n, args.d)
    fam = sectors.SectorProjectors.build(config)
    r_s, r_a, r_p = fam.ranks()
    components = []
    for comp in sectors.all_isotypic(config):
        rays = sectors.generalised_rays(comp, seed=args.seed)
        components.append(
            {
                "partition": list(comp.shape),
                "rank": comp.rank,
                "irrep_dimension": comp.dim_irrep,
                "copies": comp.copies,
                "rays": [
                    {
                        "dim": ray.dim,
                        "vectors": [
                            hilbert.vector_obj(ray.basis[:, k]) for k in range(ray.dim)
                        ],
                    }
                    for ray in rays
                ],
            }
        )
    report = {
        "command": "decompose",
        "n": args.n,
        "d": args.d,
        "seed": args.seed,
        "tolerance": sectors.EPS_RANK,
        "ranks": {"symmetric": r_s, "antisymmetric": r_a, "para": r_p},
        "components": components,
    }
    if args.json:
        _emit(report)
    else:
        print(f"sector ranks for n={args.n}, d={args.d} (dim {config.dim}):")
        print(f"  symmetric     {r_s}")
        print(f"  antisymmetric {r_a}")
        print(f"  para          {r_p}")
        for comp in components:
            dims = ", ".join(str(r["dim"]) for r in comp["rays"]) or "none"
            print(
                f"  partition {comp['partition']}: rank {comp['rank']} = "
                f"{comp['copies']} x dim {comp['irrep_dimension']} (rays: {dims})"
            )
    return 0


def _cmd_symmetrise(args) -> int:
    config = AssemblyConfig(args.n, args.d)
    a = hilbert.matrix_from_json(_read_text(args.input))
    if a.shape != (config.dim, config.dim):
        raise ValueError(f"matrix shape {a.shape} does not match dim {config.dim}")
    print(hilbert.matrix_to_json(symmetriser.symmetrise(config, a)))
    return 0


def _cmd_verify_identities(args) -> int:
    config = AssemblyConfig(args.n, args.d)
    rng = hilbert.rng_for(args.seed)
    worst_a = 0.0
    worst_b = 0.0
    for _ in range(args.samples):
        w = hilbert.random_density(config, rng)
        q = hilbert.random_observable(config, rng)
        worst_a = max(worst_a, symmetriser.verify_identity_a(config, w, q))
        worst_b = max(worst_b, symmetriser.verify_identity_b(config, w, q))
    ok = worst_a <= args.tolerance and worst_b <= args.tolerance
    _emit(
        {
            "command": "verify-identities",
            "n": args.n,
            "d": args.d,
            "samples": args.samples,
            "seed": args.seed,
            "tolerance": args.tolerance,
            "max_residual_a": worst_a,
            "max_residual_b": worst_b,
            "pass": ok,
        }
    )
    return 0 if ok else 1


def _cmd_classify(args) -> int:
    config = AssemblyConfig(args.n, args.d)
    v = hilbert.vector_from_json(_read_text(args.input))
    if v.shape != (config.dim,):
        raise ValueError(f"vector length {v.shape[0]} does not match dim {config.dim}")
    fam = sectors.SectorProjectors.build(config)
    cls = sectors.classify_vector(fam, v, tol=args.tolerance)
    _emit(
        {
            "command": "classify",
            "n": args.n,
            "d": args.d,
            "seed": None,
            "tolerance": args.tolerance,
            "weights": {
                "symmetric": cls.symmetric_weight,
                "antisymmetric": cls.antisymmetric_weight,
                "para": cls.para_weight,
            },
            "label": cls.label,
        }
    )
    return 0


def _cmd_superselect(args) -> int:
    config = AssemblyConfig(args.n, args.d)
    w = hilbert.matrix_from_json(_read_text(args.input))
    if w.shape != (config.dim, config.dim):
        raise ValueError(f"matrix shape {w.shape} does not match dim {config.dim}")
    fam = sectors.SectorProjectors.build(config)
    print(hilbert.matrix_to_json(symmetriser.sector_superselect(fam, w)))
    return 0


def _cmd_coins(args) -> int:
    stats = casebook.coin_statistics(args.measure)
    _emit({k: str(v) for k, v in stats.as_dict().items()})
    return 0


def _cmd_bloch(args) -> int:
    if args.sweep is not None:
        rows = casebook.bloch_sweep(args.sweep)
        print("theta,phi,re_z,im_z,p,re_q,im_q,x,y,height")
        for r in rows:
            z = r["z"]
            re_z, im_z = ("inf", "inf") if z is None else (repr(z.real), repr(z.imag))
            cells = [
                repr(r["theta"]),
                repr(r["phi"]),
                re_z,
                im_z,
                repr(r["p"]),
                repr(r["q"].real),
                repr(r["q"].imag),
                repr(r["x"]),
                repr(r["y"]),
                repr(r["height"]),
            ]
            print(",".join(cells))
        return 0
    if args.xi is None or args.eta is None:
        raise ValueError("bloch needs either --sweep K or both --xi and --eta")
    point = casebook.bloch_point(parse_complex(args.xi), parse_complex(args.eta))
    state = casebook.point_state(point)
    _emit(
        {
            "command": "bloch",
            "seed": None,
            "tolerance": casebook.EPS_BLOCH,
            "z": _fmt_complex(point.z),
            "p": point.p,
            "q": _fmt_complex(point.q),
            "height": point.height,
            "planar": _fmt_complex(point.planar),
            "pure": state.pure,
            "symmetric": state.symmetric,
        }
    )
    return 0


def _cmd_fig3(args) -> int:
    report = casebook.fig3_analysis(seed=args.seed, tol=args.tolerance)
    _emit(
        {
            "command": "fig3",
            "seed": report.seed,
            "tolerance": report.tolerance,
            "checks": report.checks,
            "residuals": {
                "reflection": report.reflection_residual,
                "trivial_action": report.trivial_action_residual,
                "plane_invariance": report.plane_invariance_residual,
                "orbit_span": report.orbit_span_residual,
                "schur": report.schur_residual,
                "expectation_spread": report.expectation_spread,
                "no_fermion": report.no_fermion_residual,
            },
            "plane_commutant_dimension": report.plane_commutant_dimension,
            "orbit_span_rank": report.orbit_span_rank,
            "schur_scalar": report.schur_scalar,
            "pass": report.ok,
        }
    )
    return 0 if report.ok else 1


def _cmd_model(args) -> int:
    model = models.model_from_json(_read_text(args.input))
    if args.apply_perm is not None:
        perm = symgroup.parse_permutation(args.apply_perm, n=model.size)
        print(models.model_to_json(models.apply_perm(perm, model)))
        return 0
    if args.describe is not None:
        describe = (
            models.state_description
            if args.describe == "state"
            else models.structure_description
        )
        print(models.format_formula(describe(model)))
        return 0
    if args.permutes:
        cls = models.permute_class(model)
        _emit(
            {
                "command": "model",
                "count": len(cls),
                "models": [json.loads(models.model_to_json(m)) for m in cls],
            }
        )
        return 0
    if args.symmetric:
        stabilizers = [
            symgroup.format_cycles(p)
            for p in symgroup.all_permutations(model.size)
            if models.apply_perm(p, model) == model
        ]
        _emit(
            {
                "command": "model",
                "symmetric": models.is_symmetric_model(model),
                "fully_symmetric": models.is_fully_symmetric_model(model),
                "stabilizers": stabilizers,
            }
        )
        return 0
    if args.check_formula is not None:
        formula = models.parse_formula(args.check_formula)
        _emit(
            {
                "command": "model",
                "formula": models.format_formula(formula),
                "satisfied": models.satisfies(model, formula),
            }
        )
        return 0
    if args.pad is not None:
        name, _, arity = args.pad.partition(":")
        target = int(arity) if arity else None
        print(models.model_to_json(models.pad_relation(model, name, target)))
        return 0
    print(models.model_to_json(model))
    return 0


def _cmd_theory(args) -> int:
    theory = models.theory_from_json(_read_text(args.input))
    if args.quotient:
        quotient = models.quotient_selection(theory)
        _emit(
            {
                "command": "theory",
                "quotient": {
                    label: [json.loads(models.model_to_json(m)) for m in reps]
                    for label, reps in sorted(quotient.items())
                },
            }
        )
        return 0
    report = models.gpc_check(theory)
    _emit(
        {
            "command": "theory",
            "permutable": report.permutable,
            "fixity": report.fixed,
            "gpc_consistent": report.consistent,
        }
    )
    return 0 if report.consistent else 1


def _cmd_toy_theories(args) -> int:
    out = {}
    for name, theory in casebook.toy_theories().items():
        report = models.gpc_check(theory)
        out[name] = {
            "theory": json.loads(models.theory_to_json(theory)),
            "permutable": report.permutable,
            "fixity": report.fixed,
            "gpc_consistent": report.consistent,
        }
    _emit({"command": "toy-theories", "theories": out})
    return 0


# ---------------------------------------------------------------------------
# parser wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsym",
        description="permutation symmetry workbench: sectors, the symmetriser, "
        "coin and model casework",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_nd(p, n_default=None, d_default=None):
        p.add_argument("--n", type=int, required=n_default is None, default=n_default)
        p.add_argument("--d", type=int, required=d_default is None, default=d_default)

    p = sub.add_parser("decompose", help="sector ranks and generalised rays")
    add_nd(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("symmetrise", help="group-average a matrix (JSON in, JSON out)")
    add_nd(p)
    p.add_argument("--input", required=True, help="matrix JSON file, or - for stdin")
    p.set_defaults(func=_cmd_symmetrise)

    p = sub.add_parser("verify-identities", help="check the two trace identities")
    add_nd(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=hilbert.EPS_ABS)
    p.set_defaults(func=_cmd_verify_identities)

    p = sub.add_parser("classify", help="sector weights of a state vector")
    add_nd(p)
    p.add_argument("--input", required=True, help="vector JSON file, or - for stdin")
    p.add_argument("--tolerance", type=float, default=hilbert.EPS_ABS)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("superselect", help="pinch a state by the sector family")
    add_nd(p)
    p.add_argument("--input", required=True, help="matrix JSON file, or - for stdin")
    p.set_defaults(func=_cmd_superselect)

    p = sub.add_parser("coins", help="two-coin toss statistics, exact fractions")
    p.add_argument("--measure", required=True, choices=casebook.COIN_MEASURES)
    p.set_defaults(func=_cmd_coins)

    p = sub.add_parser("bloch", help="ratio coordinates on the two-coin ball")
    p.add_argument("--xi", help="amplitude of |HT>, e.g. 1+0i")
    p.add_argument("--eta", help="amplitude of |TH>")
    p.add_argument("--sweep", type=int, help="emit a CSV sphere grid with K steps")
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("fig3", help="certify the three-coin paraparticle plane")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=hilbert.EPS_ABS)
    p.set_defaults(func=_cmd_fig3)

    p = sub.add_parser("model", help="inspect a finite model (JSON in)")
    p.add_argument("--input", required=True, help="model JSON file, or - for stdin")
    action = p.add_mutually_exclusive_group()
    action.add_argument("--describe", choices=("state", "structure"))
    action.add_argument("--permutes", action="store_true")
    action.add_argument("--symmetric", action="store_true")
    action.add_argument("--check-formula", metavar="SEXPR")
    action.add_argument("--apply-perm", metavar="PERM", help="e.g. '(1 2)' or '[2,1,3]'")
    action.add_argument("--pad", metavar="REL[:ARITY]")
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("theory", help="permutability and fixity of a theory (JSON in)")
    p.add_argument("--input", required=True, help="theory JSON file, or - for stdin")
    p.add_argument("--quotient", action="store_true")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("toy-theories", help="the renovators and scribes examples")
    p.set_defaults(func=_cmd_toy_theories)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; map real parse errors to 2
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except sectors.DecompositionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except hilbert.NumericalIntegrityError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
