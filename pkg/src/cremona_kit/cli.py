"""Command-line front end.  Every subcommand prints JSON on stdout.

Exit status: 0 on success, 1 when a suite has a failing check, 2 on usage
or input errors (message on stderr, nothing written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .algebra.fields import cyclotomic_field
from .algebra.groebner import GroebnerBudgetExceeded
from .cremona import (
    CremonaMap,
    PlaneCurve,
    compose,
    conjugate,
    dejonquieres,
    fixed_curve,
    order_up_to,
    pgl3_from_frames,
)
from .lattice import (
    PicIsometry,
    PicLattice,
    bertini,
    check_ro1_divisibility,
    class_name,
    count_order5_isometries,
    geiser,
    invariant_rank,
    isometry_from_cycle,
    minimal_pair_check,
    minus_one_classes,
    orbit_decomposition,
    parse_class,
    pentagon_splittings,
    trace,
)
from .report import SuiteConfig, default_groebner_steps, emit_schema
from .suites import UnknownSuiteError, _jsonable, run_suite, suite_names
from .surfaces import (
    CubicPencil,
    fermat_sigma_action,
    grassmannian_check,
    lines_on_fermat,
    parse_elliptic_model,
    pencil_singular_members,
    weierstrass_normalize,
)
from .weighted import (
    DiagonalAction,
    HypersurfaceModel,
    WeightedRing,
    invariant_generators,
    jacobian_smooth,
    quotient_presentation,
)


class UsageError(ValueError):
    pass


def _print(obj) -> None:
    sys.stdout.write(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _field(n):
    return cyclotomic_field(n) if n else None


def _points(text: str) -> list[list[int]]:
    """``"1,0,0;0,1,0;0,0,1;1,1,1"`` -> four integer points."""
    pts = [_ints(chunk) for chunk in text.split(";") if chunk.strip()]
    if len(pts) != 4 or any(len(p) != 3 for p in pts):
        raise UsageError("a frame is four points with three coordinates each")
    return pts


def _singular(specs) -> list:
    """``"0,0,1:2"`` -> ``((0, 0, 1), 2)``."""
    out = []
    for s in specs or []:
        pt, _, m = s.partition(":")
        if not m:
            raise UsageError("singular points are given as x,y,z:multiplicity")
        out.append((tuple(_ints(pt)), int(m)))
    return out


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, round(time.perf_counter() - start, 4)


def _map_out(f: CremonaMap) -> list[str]:
    return [str(c) for c in f.components]


# -- run / schema ------------------------------------------------------------------------


def cmd_run(args) -> int:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
    suite = args.suite or data.get("suite")
    if not suite:
        raise UsageError("no suite given (use --suite or a config with a 'suite' entry)")
    cfg = SuiteConfig.from_dict(data, suite=suite)
    if args.timings:
        cfg.timings = True
    out = args.out or cfg.out
    report = run_suite(cfg)  # raises before anything is written for an unknown suite
    text = report.to_json()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for c in sorted(report.checks, key=lambda c: c.claim_id):
        sys.stderr.write(f"{c.status.upper():8s} {c.claim_id}\n")
    return 1 if report.failed else 0


def cmd_schema(args) -> int:
    sys.stdout.write(emit_schema())
    return 0


# -- maps --------------------------------------------------------------------------------


def cmd_map(args) -> int:
    field = _field(args.field)
    f = CremonaMap.parse(args.map, field)
    out = {"input": _map_out(f), "degree": f.degree}
    if args.action == "order":
        value, t = _timed(lambda: order_up_to(f, args.bound))
        out.update(order=str(value) if value < 0 else int(value), bound=args.bound, seconds=t)
    elif args.action == "compose":
        if not args.other:
            raise UsageError("compose needs --with")
        g = CremonaMap.parse(args.other, field)
        h = compose(f, g)
        out.update(other=_map_out(g), composite=_map_out(h), composite_degree=h.degree)
    elif args.action == "fixed-curve":
        out.update(fixed_curve=str(fixed_curve(f)))
    elif args.action == "conjugate":
        if not (args.src and args.dst):
            raise UsageError("conjugate needs --src and --dst frames")
        g = pgl3_from_frames(_points(args.src), _points(args.dst))
        h = conjugate(f, g)
        out.update(conjugator=g.to_dict(), conjugate=_map_out(h))
    return _emit(out)


def cmd_dejonquieres(args) -> int:
    C = PlaneCurve.parse(args.curve, _singular(args.singular), _field(args.field))
    if args.degree is not None and C.degree != args.degree:
        raise UsageError(f"curve has degree {C.degree}, not {args.degree}")
    (J, t) = _timed(lambda: dejonquieres(C))
    out = {
        "curve": str(C.equation),
        "degree": J.degree,
        "map": _map_out(J),
        "involution": compose(J, J).is_identity(),
        "fixed_curve": str(fixed_curve(J)),
        "seconds": t,
    }
    return _emit(out)


# -- lattices ----------------------------------------------------------------------------


def _iso_summary(M: PicIsometry) -> dict:
    L = M.lattice
    return {
        "r": L.r,
        "matrix": M.to_list(),
        "order": M.order(),
        "trace": trace(M),
        "invariant_rank": invariant_rank(M),
        "orbits": [
            {"members": [class_name(c) for c in o["members"]], "sum": list(o["sum"])}
            for o in orbit_decomposition(M, minus_one_classes(L))
        ],
    }


def _load_isometry(path: str) -> PicIsometry:
    data = json.loads(Path(path).read_text())
    matrix = data["matrix"] if isinstance(data, dict) else data
    r = data.get("r", len(matrix) - 1) if isinstance(data, dict) else len(matrix) - 1
    return PicIsometry(PicLattice(int(r)), matrix)


def cmd_lattice(args) -> int:
    a = args.action
    if a == "classes":
        L = PicLattice(args.r)
        cls = minus_one_classes(L)
        return _emit({"r": args.r, "count": len(cls), "classes": [class_name(c) for c in cls]})
    if a == "geiser":
        return _emit(_iso_summary(geiser()))
    if a == "bertini":
        return _emit(_iso_summary(bertini()))
    if a == "pentagon":
        L = PicLattice(args.r)
        cycle = [parse_class(t.strip(), L.r) for t in args.cycle.split(",")]
        M = isometry_from_cycle(L, cycle)
        out = _iso_summary(M)
        out["cycle"] = [class_name(c) for c in cycle]
        out["ro1"] = check_ro1_divisibility(L, M) if out["invariant_rank"] == 1 else None
        return _emit(out)
    if a == "count-order5":
        return _emit({"r": 4, "order5_isometries": count_order5_isometries(), "pentagon_splittings": len(pentagon_splittings())})
    if a == "minimal-pair":
        M = _load_isometry(args.isometry)
        ok, witnesses = minimal_pair_check(M)
        return _emit({"r": M.lattice.r, "pass": ok, "witnesses": witnesses})
    raise UsageError(a)


# -- weighted projective spaces ------------------------------------------------------------


def _load_model(path: str) -> HypersurfaceModel:
    return HypersurfaceModel.from_dict(json.loads(Path(path).read_text()))


def cmd_wps(args) -> int:
    if args.action == "invariants":
        R = WeightedRing.standard(tuple(_ints(args.weights)))
        A = DiagonalAction(args.order, tuple(_ints(args.action_exponents)))
        gens = invariant_generators(R, A, args.bound)
        return _emit({"ring": R.label(), "action": A.to_dict(), "generators": gens.as_strings(R), "bound": gens.bound, "checked": gens.checked})
    X = _load_model(args.model)
    if args.action == "quotient":
        Q = quotient_presentation(X)
        return _emit({"model": X.to_dict(), "quotient": Q.to_dict(), "label": Q.label()})
    if args.action == "smooth":
        steps = args.groebner_steps or default_groebner_steps()
        try:
            rep = jacobian_smooth(X, steps)
        except GroebnerBudgetExceeded as exc:
            return _emit({"model": X.to_dict(), "smooth": None, "skipped": str(exc)})
        return _emit({"model": X.to_dict(), **rep.to_dict()})
    raise UsageError(args.action)


# -- surfaces ------------------------------------------------------------------------------


def cmd_fermat(args) -> int:
    if args.action == "lines":
        lines = lines_on_fermat()
        return _emit({"count": len(lines), "lines": [{"label": l.label, "plucker": [str(c) for c in l.plucker]} for l in lines]})
    sigma = fermat_sigma_action(args.coordinate)
    return _emit(sigma.to_dict())


def cmd_pencil(args) -> int:
    P = CubicPencil.parse(args.a, args.b, _field(args.field))
    return _emit(pencil_singular_members(P))


def cmd_elliptic(args) -> int:
    E = weierstrass_normalize(parse_elliptic_model(args.model, field=_field(args.field)))
    return _emit({"model": args.model, **E.to_dict()})


def cmd_grass(args) -> int:
    steps = args.groebner_steps or default_groebner_steps()
    return _emit(grassmannian_check(steps, smoothness=not args.no_smooth))


def _emit(obj) -> int:
    _print(obj)
    return 0


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona-kit", description="Exact checks for prime-order plane Cremona maps.")
    p.add_argument("--version", action="version", version=f"cremona-kit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a verification suite")
    r.add_argument("--suite", help=f"one of: {', '.join(suite_names())}")
    r.add_argument("--config", help="JSON suite configuration")
    r.add_argument("--out", help="write the report here instead of stdout")
    r.add_argument("--timings", action="store_true", help="record wall times (reports are then not byte-stable)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("schema", help="print the report JSON schema")
    s.set_defaults(func=cmd_schema)

    m = sub.add_parser("map", help="plane Cremona maps")
    m.add_argument("action", choices=["order", "compose", "fixed-curve", "conjugate"])
    m.add_argument("--map", required=True, help='components separated by ";", e.g. "x*(z-y); z*(x-y); x*z"')
    m.add_argument("--with", dest="other", help="second map for compose (applied first)")
    m.add_argument("--bound", type=int, default=12)
    m.add_argument("--src", help="source frame, four points 'a,b,c;...'")
    m.add_argument("--dst", help="target frame")
    m.add_argument("--field", type=int, default=0, help="work over Q(zeta_n)")
    m.set_defaults(func=cmd_map)

    d = sub.add_parser("dejonquieres", help="de Jonquieres involutions")
    d.add_argument("action", choices=["build"])
    d.add_argument("--curve", required=True)
    d.add_argument("--degree", type=int)
    d.add_argument("--singular", action="append", help="declared singular point x,y,z:multiplicity")
    d.add_argument("--field", type=int, default=0)
    d.set_defaults(func=cmd_dejonquieres)

    lat = sub.add_parser("lattice", help="Picard lattices of blown-up planes")
    lat.add_argument("action", choices=["classes", "geiser", "bertini", "pentagon", "count-order5", "minimal-pair"])
    lat.add_argument("-r", type=int, default=4)
    lat.add_argument("--cycle", default="L'12,E1,L'14,L'23,E2", help="comma-separated classes")
    lat.add_argument("--isometry", help="JSON file with {'r': r, 'matrix': [[...]]}")
    lat.set_defaults(func=cmd_lattice)

    w = sub.add_parser("wps", help="weighted projective hypersurfaces")
    w.add_argument("action", choices=["invariants", "quotient", "smooth"])
    w.add_argument("--weights", default="1,1,2,3")
    w.add_argument("--action", dest="action_exponents", default="0,1,0,0")
    w.add_argument("--order", type=int, default=5)
    w.add_argument("--bound", type=int)
    w.add_argument("--model", help="JSON model file {weights, equation, action, order}")
    w.add_argument("--groebner-steps", type=int)
    w.set_defaults(func=cmd_wps)

    f = sub.add_parser("fermat", help="the Fermat cubic surface")
    f.add_argument("action", choices=["lines", "sigma-trace"])
    f.add_argument("--coordinate", type=int, default=0)
    f.set_defaults(func=cmd_fermat)

    pc = sub.add_parser("pencil", help="pencils of plane cubics")
    pc.add_argument("action", choices=["singular"])
    pc.add_argument("--a", required=True)
    pc.add_argument("--b", required=True)
    pc.add_argument("--field", type=int, default=0)
    pc.set_defaults(func=cmd_pencil)

    e = sub.add_parser("elliptic", help="Weierstrass forms")
    e.add_argument("action", choices=["j"])
    e.add_argument("--model", required=True, help="equation in z, w; other names are parameters")
    e.add_argument("--field", type=int, default=0)
    e.set_defaults(func=cmd_elliptic)

    g = sub.add_parser("grass", help="the order-5 section of Gr(2,5)")
    g.add_argument("action", choices=["check"])
    g.add_argument("--no-smooth", action="store_true")
    g.add_argument("--groebner-steps", type=int)
    g.set_defaults(func=cmd_grass)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuiteError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
