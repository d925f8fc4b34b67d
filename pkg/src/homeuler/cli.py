"""Command-line front end: solve, build, verify and export.

Exit status: 0 success, 1 failed verification, 2 rejected parameters,
3 solver failure, 64 usage error or unreadable input.  Every run can write a meta JSON whose
``config`` block, passed back through ``--config``, reproduces the run.
"""
import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from . import bvp, fields, levelset, spectral, verify
from ._io import read_json, read_profile, write_json, write_profile
from .errors import HomEulerError, ParameterError
from .params import ParamSet
from .profile import INTERVAL

EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _floats(s):
    return [float(v) for v in s.split(",") if v.strip()]


def _pmap(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ------------------------------------------------------------ solve

def _axi_params(a):
    if a.alpha is not None:
        return ParamSet.axisymmetric(a.alpha, a.C1, a.C2)
    if a.beta is not None:
        return ParamSet.from_coefficients(a.beta, a.c1, a.c2)
    raise ParameterError("give --alpha (with --C1/--C2) or --beta (with --c1/--c2)")


def _planar_params(a):
    if a.alpha is not None:
        return ParamSet.planar(a.alpha, a.C1, a.C2)
    if a.beta is not None:
        return ParamSet.planar_from_c(a.beta, a.c)
    raise ParameterError("give --alpha (with --C1/--C2) or --beta (with --c)")


def solve_from_config(cmd, cfg):
    """Re-run the deterministic solve recorded in a config block."""
    a = argparse.Namespace(**cfg)
    if cmd == "solve-axi":
        p = _axi_params(a)
        return bvp.solve_nonautonomous(p, tol=a.tol, branch=a.branch), p
    p = _planar_params(a)
    w = bvp.solve_autonomous(p.beta, p.c, lobes=a.lobes, tol=a.tol)
    return w, w.params


def _profile_meta(w, p):
    meta = {"params": p.to_dict(), "residual_certificate": w.residual_certificate,
            "refined_residual": w.info.get("refined_residual"), "certified": w.certified,
            "zero_count": w.zero_count, "beta": w.beta, "domain": w.domain,
            "info": {k: v for k, v in w.info.items() if np.isscalar(v)}}
    if w.domain == INTERVAL:
        meta["I_value"] = bvp.functional_I(w, p)
    return meta


def cmd_solve(a, cfg):
    w, p = solve_from_config(a.command, cfg)
    if a.out:
        write_profile(a.out, w)
    meta = {"command": a.command, "config": cfg, "version": __version__, **_profile_meta(w, p)}
    if a.meta:
        write_json(a.meta, meta)
    print(f"certificate {w.residual_certificate:.3e} zero_count {w.zero_count} "
          f"certified {w.certified}")
    return 0


# ------------------------------------------------------------ eigen

def cmd_eigen(a, cfg):
    sys_ = (spectral.assemble_autonomous if a.autonomous else spectral.assemble_eigensystem)(a.beta, a.modes)
    out = {"beta": sys_.beta, "M": sys_.M, "eigenvalues": sys_.eigenvalues.tolist(),
           "split_index": sys_.split_index, "domain": sys_.domain, "config": cfg,
           "command": "eigen", "version": __version__}
    if a.json:
        write_json(a.json, out)
    print(" ".join(f"{m:.12g}" for m in sys_.eigenvalues[:a.show]))
    return 0


# ------------------------------------------------------------ catalog

def _catalog_field(a):
    kind = a.kind
    if kind == "axi":
        return fields.irrotational_axisymmetric_field(a.n)
    if kind == "2d":
        return fields.irrotational_2d_field(a.n)
    if kind == "geodesic":
        return fields.geodesic_field(a.a, a.b, a.alpha)
    if kind == "circular":
        return fields.circular_field(a.a, a.alpha)
    raise ParameterError(f"unknown catalog kind {kind}")


def field_from_meta(meta):
    cmd, cfg = meta["command"], meta["config"]
    if cmd == "catalog":
        return _catalog_field(argparse.Namespace(**cfg))
    w, p = solve_from_config(cmd, cfg)
    if cmd == "solve-axi":
        return fields.build_axisymmetric(w, p)
    return fields.build_25d(w, p)


def cmd_catalog(a, cfg):
    f = _catalog_field(a)
    if a.profile_out:
        if a.kind not in ("axi", "2d") or a.n == 0:
            raise ParameterError("profile export needs --kind axi|2d with n != 0")
        dom = INTERVAL if a.kind == "axi" else "arc"
        write_profile(a.profile_out, fields.catalog_profile(float(a.n), dom))
    if a.out:
        X = verify.sample_points(a.points, seed=a.seed)
        if a.kind == "geodesic":
            X = X[f.support(X)]
        fields.export_samples(f, X, a.out)
    if a.meta:
        write_json(a.meta, {"command": "catalog", "config": cfg, "version": __version__,
                            **f.meta()})
    print(f"{f.tag} alpha={f.alpha:g}")
    return 0


# ------------------------------------------------------------ verify

CHECKS = ("euler", "gs", "sphere", "homog", "integrals")


def run_checks(f, checks, n_points=100, seed=0):
    X = verify.sample_points(n_points, seed=seed)
    if getattr(f, "support", None) is not None:
        X = X[f.support(X)]
    reps = []
    axi = f.mode == fields.AXISYMMETRIC
    for c in checks:
        if c == "euler":
            reps.append(verify.euler_residual(f, X))
        elif c == "homog":
            reps.append(verify.homogeneity_check(f, X, (1e-3, 2.0, 1e3)))
        elif c == "integrals" and f.mode in (fields.AXISYMMETRIC, fields.PLANAR25D):
            reps.append(verify.first_integral_check(f, X))
        elif c == "gs" and axi:
            P = np.c_[X[:, 2], np.hypot(X[:, 0], X[:, 1])]
            reps.append(verify.grad_shafranov_residual(f.profile, f.params, P))
        elif c == "sphere" and (axi or f.mode == fields.CATALOG and f.alpha != 1):
            try:
                sp = verify.SphereProfile.from_field(f)
            except HomEulerError:
                continue
            reps.append(verify.sphere_equations_residual(sp, f.alpha))
    return reps


def cmd_verify(a, cfg):
    meta = read_json(a.field)
    f = field_from_meta(meta)
    checks = CHECKS if a.checks == "all" else tuple(a.checks.split(","))
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise ParameterError(f"unknown checks: {', '.join(bad)}")
    reps = run_checks(f, checks, a.points, a.seed)
    for r in reps:
        print(f"{r.name:16s} max_rel {r.max_rel:.3e}  {'PASS' if r.passed else 'FAIL'}")
    if a.report:
        write_json(a.report, {"command": "verify", "config": cfg, "version": __version__,
                              "field": meta.get("command"),
                              "reports": [r.to_dict() for r in reps]})
    return 0 if all(r.passed for r in reps) else 1


# ------------------------------------------------------------ levelset

def _one_level(job):
    path, beta, C, n = job
    return levelset.extract_level_curve(read_profile(path, beta), beta, C, n)


def cmd_levelset(a, cfg):
    w = read_profile(a.profile, a.beta)
    levels = _floats(a.levels)
    curves = _pmap(_one_level, [(a.profile, a.beta, C, a.n_points) for C in levels], a.jobs)
    cls = levelset.classify(w, a.beta)
    if a.csv:
        levelset.curves_to_csv(curves, a.csv)
    if a.svg:
        levelset.curves_to_svg(curves, a.svg)
    if a.meta:
        write_json(a.meta, {"command": "levelset", "config": cfg, "version": __version__,
                            "classification": str(cls), "lobes": cls.lobes, "pole": cls.pole,
                            "branches": {str(c.level): len(c.branches) for c in curves}})
    print(f"{cls} lobes={cls.lobes}")
    return 0


# ------------------------------------------------------------ parser

def build_parser():
    top = _Parser(prog="homeuler", description="Homogeneous Euler flows: solve, verify, export.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="key=value file or an emitted meta JSON")
        p.add_argument("--jobs", type=int, default=1)
        return p

    for name, planar in (("solve-axi", False), ("solve-2d", True)):
        p = common(sub.add_parser(name))
        p.add_argument("--alpha", type=float)
        p.add_argument("--C1", type=float, default=0.0)
        p.add_argument("--C2", type=float, default=0.0)
        p.add_argument("--beta", type=float)
        if planar:
            p.add_argument("--c", type=float)
            p.add_argument("--lobes", type=int, default=1)
        else:
            p.add_argument("--c1", type=float, default=0.0)
            p.add_argument("--c2", type=float, default=0.0)
            p.add_argument("--branch", choices=("default", "positive"), default="default")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--out")
        p.add_argument("--meta")
        p.set_defaults(run=cmd_solve)

    p = common(sub.add_parser("eigen"))
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--modes", type=int, default=128)
    p.add_argument("--autonomous", action="store_true", help="-d^2/dphi^2 - beta^2 on (0, pi)")
    p.add_argument("--show", type=int, default=6)
    p.add_argument("--json")
    p.set_defaults(run=cmd_eigen)

    p = common(sub.add_parser("verify"))
    p.add_argument("--field", required=True, help="meta JSON from solve-* or catalog")
    p.add_argument("--checks", default="all")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(run=cmd_verify)

    p = common(sub.add_parser("levelset"))
    p.add_argument("--profile", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--levels", default="0.1,0.5,1")
    p.add_argument("--n-points", type=int, default=200)
    p.add_argument("--svg")
    p.add_argument("--csv")
    p.add_argument("--meta")
    p.set_defaults(run=cmd_levelset)

    p = common(sub.add_parser("catalog"))
    p.add_argument("--kind", choices=("axi", "2d", "geodesic", "circular"), default="axi")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=-1.0)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="field samples CSV x,y,z,u1,u2,u3,p")
    p.add_argument("--profile-out", help="profile CSV t|phi,w,dw")
    p.add_argument("--meta")
    p.set_defaults(run=cmd_catalog)
    return top


_NOT_CONFIG = {"run", "command", "config", "jobs"}


def _read_config(path):
    if path.endswith(".json"):
        return read_json(path).get("config", {})
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"expected key=value, got {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def parse(argv):
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    choices = parser._subparsers._group_actions[0].choices
    if known.config and known.command in choices:
        try:
            cfg = _read_config(known.config)
        except (OSError, ValueError) as e:
            parser.error(f"cannot read config {known.config}: {e}")
        sp = choices[known.command]
        dests = {act.dest: act for act in sp._actions}
        unknown = [k for k in cfg if k not in dests or k in _NOT_CONFIG]
        if unknown:
            sp.error(f"unknown config keys: {', '.join(unknown)}")
        for k, v in cfg.items():
            act = dests[k]
            if isinstance(act, (argparse._StoreTrueAction, argparse._StoreFalseAction)) and isinstance(v, str):
                cfg[k] = v.lower() in ("1", "true", "yes", "on")
            act.required = False
        sp.set_defaults(**cfg)   # flags on the command line still win
    return parser.parse_args(argv)


def run(argv=None):
    try:
        a = parse(sys.argv[1:] if argv is None else list(argv))
    except SystemExit as e:
        return int(e.code or 0) if e.code in (0, None) else EX_USAGE
    cfg = {k: v for k, v in vars(a).items() if k not in _NOT_CONFIG}
    try:
        return a.run(a, cfg)
    except HomEulerError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code or 1
    except (OSError, ValueError, KeyError) as e:
        # unreadable or malformed input files
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
