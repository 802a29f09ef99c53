"""Command line front end.

Subcommands: cubicles, inequalities, check, oracle-verify.  Exit codes:
0 ok, 2 configuration error, 3 resource bound, 4 verification failure.
"""
import argparse
import itertools
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import jsonschema

from . import embedding as emb
from . import momentcone as mc
from .errors import ConfigError, ResourceError, VerificationError
from .oracle import DEFAULT_BUDGET, branching_multiplicity, decomposition, saturation_scan
from .polyhedra import systems_equivalent
from .rootdata import build_root_datum
from .schubert import calculus
from .serialize import parse_vector, rational, rational_vector

CACHE_ENV = "RELSCHUBERT_CACHE_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_VERIFY = 0, 2, 3, 4

log = logging.getLogger("relschubert")


def load_schema(name="problem_config.schema.json"):
    text = resources.files("relschubert").joinpath("schemas", name).read_text()
    return json.loads(text)


def validate_config(cfg):
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError("config invalid at %s: %s" % (path, exc.message))
    return cfg


def read_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc))
    except ValueError as exc:
        raise ConfigError("config %s is not valid JSON: %s" % (path, exc))
    return validate_config(cfg)


def _group(cfg, key, bound):
    if key not in cfg:
        raise ConfigError("config needs a %r group for this embedding kind" % key)
    spec = cfg[key]
    if isinstance(spec, dict):
        return build_root_datum(spec["cartan"], spec.get("central_rank", 0), enumeration_bound=bound)
    return build_root_datum(spec, enumeration_bound=bound)


def embedding_from_config(cfg):
    """Build the (chamber-adjusted) embedding described by a validated config."""
    bound = cfg.get("bounds", {}).get("enumeration", 10 ** 6)
    spec = cfg["embedding"]
    kind = spec["kind"]

    def need(field):
        if field not in spec:
            raise ConfigError("embedding kind %r needs the field %r" % (kind, field))
        return spec[field]

    if kind == "matrix":
        E = emb.embedding_from_matrix(_group(cfg, "source", bound), _group(cfg, "target", bound),
                                      [list(parse_vector(r)) for r in need("matrix")])
    elif kind == "lattice":
        E = emb.embedding_from_lattice_matrix(_group(cfg, "source", bound), _group(cfg, "target", bound),
                                              [list(parse_vector(r)) for r in need("matrix")])
    elif kind == "weights":
        src = _group(cfg, "source", bound)
        if "highest_weight" in spec:
            E = emb.embedding_from_weights(src, highest_weight=parse_vector(spec["highest_weight"]))
        else:
            E = emb.embedding_from_weights(src, weights=[src.from_fundamental(parse_vector(w))
                                                         for w in need("weights")])
    elif kind == "diagonal":
        E = emb.diagonal_embedding(_group(cfg, "source", bound), need("copies"))
    elif kind == "sl2":
        E = emb.sl2_embedding(_group(cfg, "target", bound), need("labels"))
    elif kind == "principal_sl2":
        E = emb.principal_sl2(_group(cfg, "target", bound))
    elif kind == "torus":
        E = emb.torus_embedding(_group(cfg, "target", bound))
    else:
        E = emb.identity_embedding(_group(cfg, "source", bound))
    point = spec.get("chamber_point")
    if point is not None:
        point = E.source.coweight_from_coroot_coords(parse_vector(point))
    return emb.make_compatible(E, point)


def _cache_dir(args):
    return args.cache or os.environ.get(CACHE_ENV)


def _load_cache(E, directory):
    if directory:
        for d in (E.source, E.target):
            calculus(d).load_cache(directory)


def _save_cache(E, directory):
    if directory:
        for d in (E.source, E.target):
            calculus(d).save_cache(directory)


def _dump(obj, path=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weight(d, values, what):
    vals = parse_vector(values)
    if len(vals) != d.dim:
        raise ConfigError("%s needs %d coordinates, got %d" % (what, d.dim, len(vals)))
    return d.from_fundamental(vals)


def _problem_json(cfg, E, mode):
    return {"source": E.source.label, "target": E.target.label, "embedding": cfg["embedding"], "mode": mode,
            "fstar_fundamental": [rational_vector(r) for r in E.fundamental_matrix()]}


# -- subcommands -------------------------------------------------------------
def cmd_cubicles(cfg, args):
    E = embedding_from_config(cfg)
    _load_cache(E, _cache_dir(args))
    _dump(E.report(), cfg.get("output", {}).get("json"))
    return EXIT_OK


def cmd_inequalities(cfg, args):
    E = embedding_from_config(cfg)
    cache = _cache_dir(args)
    _load_cache(E, cache)
    mode = cfg.get("mode", "cone")
    if args.scalar:
        mode = "scalar"
    if args.invariant:
        mode = "invariant"
    lam_text = args.polytope
    if lam_text is not None or mode == "polytope":
        mode = "polytope"
        if lam_text is not None:
            values = [x.strip() for x in lam_text.split(",") if x.strip()]
        elif "lambda" in cfg:
            values = cfg["lambda"]
        else:
            raise ConfigError("polytope mode needs --polytope or a 'lambda' entry")
        lam = _weight(E.target, values, "lambda")
        raw = mc.polytope_inequalities(E, lam)
    else:
        gen = {"cone": mc.cone_inequalities, "scalar": mc.scalar_inequalities,
               "invariant": mc.invariant_inequalities}[mode]
        raw = gen(E)
    system = raw
    checked = []
    if args.prune:
        system = mc.prune_redundant(raw)
        if not systems_equivalent(system, raw):
            raise VerificationError("pruned system is not equivalent to the generated one")
        checked.append("pruned equivalent to generated")
    out = {"problem": _problem_json(cfg, E, mode), "pruned": bool(args.prune), "equivalences_checked": checked}
    out.update(system.to_json())
    if mode == "polytope":
        out["problem"]["lambda"] = rational_vector(E.target.fundamental_coords(lam))
        if hasattr(E, "h"):
            lo, hi = mc.sl2_interval(E, lam)
            out["sl2_interval"] = [rational(lo), rational(hi)]
    svg = args.emit_svg or cfg.get("output", {}).get("svg")
    picture = None
    if svg:
        if mode != "polytope":
            raise ConfigError("--emit-svg needs a polytope slice (use --polytope)")
        picture = mc.slice_svg(system)
    _dump(out, cfg.get("output", {}).get("json"))
    if picture is not None:
        with open(svg, "w") as fh:
            fh.write(picture)
    _save_cache(E, cache)
    return EXIT_OK


def cmd_check(cfg, args):
    """Membership of (lam~, lam) in the polytope-form system, with lattice and oracle data."""
    E = embedding_from_config(cfg)
    _load_cache(E, _cache_dir(args))
    if "lambda" not in cfg or "lambda_tilde" not in cfg:
        raise ConfigError("check needs 'lambda' and 'lambda_tilde' in the config")
    lam = _weight(E.target, cfg["lambda"], "lambda")
    lt = _weight(E.source, cfg["lambda_tilde"], "lambda_tilde")
    bounds = cfg.get("bounds", {})
    system = mc.polytope_system(E)
    point = tuple(E.source.fundamental_coords(lt)) + tuple(E.target.fundamental_coords(lam))
    inside = system.contains(point)
    tight = [r for r in system.tight(point) if r.kind == "ge"]
    report = {
        "lambda": rational_vector(E.target.fundamental_coords(lam)),
        "lambda_tilde": rational_vector(E.source.fundamental_coords(lt)),
        "inside": inside,
        "boundary": bool(inside and tight),
        "status": ("inside (boundary)" if tight else "inside") if inside else "outside",
        "tight_rows": [r.provenance for r in tight],
        "violated_rows": [r.provenance for r in system.violated(point)],
    }
    status, _ = mc.lattice_necessary(E, lt, lam, bound=bounds.get("monoid", 64))
    report["lattice_condition"] = status
    budget = bounds.get("oracle_budget", DEFAULT_BUDGET)
    integral = all(x.denominator == 1 for x in point)
    if integral:
        report["oracle_multiplicity_n1"] = branching_multiplicity(E, lt, lam, budget)
    max_n = args.max_n or bounds.get("scan_n", 3)
    report["saturation_n"] = saturation_scan(E, lt, lam, max_n, budget)
    report["saturation_scan_limit"] = max_n
    _dump(report, cfg.get("output", {}).get("json"))
    return EXIT_OK


def _verify_one(E, system, lam_fc, grid, scan_n, budget):
    s, t = E.source, E.target
    lam = t.from_fundamental(lam_fc)
    dec = decomposition(E, lam, budget)
    violations, misses = [], []
    for lt, m in sorted(dec.items()):
        if m <= 0:
            continue
        pt = tuple(s.fundamental_coords(lt)) + tuple(lam_fc)
        if not system.contains(pt):
            violations.append({"lambda_tilde": rational_vector(pt[:s.dim]), "lambda": rational_vector(lam_fc),
                               "multiplicity": m})
    if scan_n > 1:
        for lt_fc in itertools.product(range(grid + 1), repeat=s.rank):
            lt_fc = tuple(lt_fc) + tuple(0 for _ in range(s.central_rank))
            lt = s.from_fundamental(lt_fc)
            pt = tuple(lt_fc) + tuple(lam_fc)
            if dec.get(tuple(lt), 0) == 0 and system.contains(pt) and s.central_rank == 0:
                n = saturation_scan(E, lt, lam, scan_n, budget)
                misses.append({"lambda_tilde": rational_vector(lt_fc), "lambda": rational_vector(lam_fc),
                               "saturation_n": n})
    return violations, misses


def cmd_oracle_verify(cfg, args):
    """Grid cross-validation: every occurring pair must satisfy the system."""
    E = embedding_from_config(cfg)
    _load_cache(E, _cache_dir(args))
    bounds = cfg.get("bounds", {})
    grid = args.grid if args.grid is not None else bounds.get("grid", 4)
    scan_n = args.max_n or bounds.get("scan_n", 1)
    budget = bounds.get("oracle_budget", DEFAULT_BUDGET)
    t = E.target
    if t.central_rank:
        raise ConfigError("oracle-verify scans semisimple targets only")
    system = mc.polytope_system(E)
    lams = list(itertools.product(range(grid + 1), repeat=t.rank))
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda l: _verify_one(E, system, l, grid, scan_n, budget), lams))
    violations = [v for r in results for v in r[0]]
    misses = [m for r in results for m in r[1]]
    report = {"grid": grid, "weights_scanned": len(lams), "soundness_violations": violations,
              "saturation_misses": misses, "ok": not violations}
    _dump(report, cfg.get("output", {}).get("json"))
    return EXIT_OK if not violations else EXIT_VERIFY


COMMANDS = {"cubicles": cmd_cubicles, "inequalities": cmd_inequalities, "check": cmd_check,
            "oracle-verify": cmd_oracle_verify}


def build_parser():
    p = argparse.ArgumentParser(prog="relschubert",
                                description="Moment cones and moment polytopes via relative Schubert calculus")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="JSON problem configuration")
    p.add_argument("--prune", action="store_true", help="remove LP-redundant rows")
    p.add_argument("--scalar", action="store_true", help="use the scalar (ray-wise) generator")
    p.add_argument("--polytope", metavar="a,b,...", help="orbit polytope for lambda (fundamental coordinates)")
    p.add_argument("--invariant", action="store_true", help="invariant cone in lambda only")
    p.add_argument("--max-n", type=int, default=None, help="saturation scan bound")
    p.add_argument("--grid", type=int, default=None, help="oracle grid bound on coordinates")
    p.add_argument("--emit-svg", metavar="PATH", help="write the 2-D polytope slice as SVG")
    p.add_argument("--cache", metavar="DIR", help="Schubert table cache (default: $%s)" % CACHE_ENV)
    p.add_argument("--threads", type=int, default=1, help="worker threads for oracle scans")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = read_config(args.config)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as exc:
        print("resource bound: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print("verification failed: %s" % exc, file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
