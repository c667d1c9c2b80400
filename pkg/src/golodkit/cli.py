"""Command line front end: ``golodkit <command> [options]``.

Every command writes one JSON report (stdout or ``--out``).  Exit codes:
0 success, 1 counterexample found by a verify command, 2 malformed input,
3 size guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .cache import ResultCache
from .catalog import MAX_CATALOG_N, catalog
from .complexes import ComplexError, SimplicialComplex, is_neighbourly
from .golod import classify_golod, extractible_necessary, golod_poincare_series
from .hochster import HochsterAlgebra, bbcg_dimension_check, bigraded_betti
from .homology import reduced_homology
from .koszul import cross_validate
from .linalg import Field

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3
DEFAULT_MAX_N = 12
DEFAULT_MAX_KN = 7


class InputError(Exception):
    pass


class SizeError(Exception):
    pass


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_complex(path: str) -> SimplicialComplex:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return SimplicialComplex.from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc
    except (ComplexError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_field(spec: str) -> Field:
    try:
        return Field.parse(spec)
    except ValueError as exc:
        raise InputError(f"bad --field {spec!r}: {exc}") from exc


def guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeError(f"{what}: n = {n} exceeds the size guard {limit} (raise with --max-n)")


def _complex_info(K: SimplicialComplex) -> dict:
    return {"name": K.name, "n": K.n, "facets": [list(f) for f in K.facets],
            "ghost_vertices": list(K.ghost_vertices)}


class Context:
    def __init__(self, args):
        self.args = args
        self.cache = ResultCache(getattr(args, "cache", None))
        self.figures: list[str] = []

    def figure_path(self, kind: str) -> Path | None:
        """Figures sit next to ``--out`` (``report.json`` -> ``report.<kind>.png``)."""
        a = self.args
        if getattr(a, "no_figures", False):
            return None
        if getattr(a, "figure_dir", None):
            d = Path(a.figure_dir)
            d.mkdir(parents=True, exist_ok=True)
            return d / f"{a.command}.{kind}.png"
        if a.out:
            out = Path(a.out)
            return out.with_name(f"{out.stem}.{kind}.png")
        return None

    def add_figure(self, kind: str, draw) -> None:
        p = self.figure_path(kind)
        if p is not None:
            draw(p)
            self.figures.append(p.name)


# -- commands -------------------------------------------------------------------------

def cmd_betti(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "betti")
    F = parse_field(a.field)
    H = reduced_homology(K)
    table = bigraded_betti(K, F)
    from . import plotting
    ctx.add_figure("betti", lambda p: plotting.betti_heatmap(table, p))
    return {"complex": _complex_info(K), "integral_homology": H.describe(),
            "bigraded": table.to_json(), "f_vector": K.f_vector()}, EXIT_OK


def cmd_hochster(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "hochster")
    F = parse_field(a.field)
    table = bigraded_betti(K, F)
    agrees, suspended = bbcg_dimension_check(K, F)
    from . import plotting
    ctx.add_figure("poincare", lambda p: plotting.degree_bars(
        table.poincare_list(), p, "total degree", f"H*(Z_K; {F.name})"))
    return {"complex": _complex_info(K), "table": table.to_json(),
            "poincare": table.poincare_list(),
            "stable_splitting_dims_agree": agrees,
            "suspended_dims": {str(k): v for k, v in suspended.items()}}, EXIT_OK


def cmd_products(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "products")
    F = parse_field(a.field)
    ok, witness = HochsterAlgebra(K, F).all_products_vanish()
    return {"complex": _complex_info(K), "field": F.name, "all_products_vanish": ok,
            "witness": witness}, EXIT_OK


def cmd_golod(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "golod")
    F = parse_field(a.field)
    try:
        v = classify_golod(K, F, random.Random(a.seed))
    except ComplexError as exc:
        raise InputError(str(exc)) from exc
    series = golod_poincare_series(K, F, v)
    terms = series.series(a.terms)
    from . import plotting
    ctx.add_figure("series", lambda p: plotting.degree_bars(
        terms, p, "power of t", f"Golod series coefficients ({F.name})"))
    return {"complex": _complex_info(K), "verdict": v.to_json(),
            "neighbourly": is_neighbourly(K), "golod_series": series.to_json(),
            "golod_series_terms": terms}, EXIT_OK


def cmd_extractible(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "extractible")
    F = parse_field(a.field)
    return {"complex": _complex_info(K), "field": F.name,
            "necessary_condition": extractible_necessary(K, F).to_json()}, EXIT_OK


def cmd_crosscheck(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "crosscheck")
    F = parse_field(a.field)
    r = cross_validate(K, F)
    code = EXIT_OK if r.agree or a.no_fail else EXIT_COUNTEREXAMPLE
    return {"complex": _complex_info(K), "field": F.name, "crosscheck": r.to_json()}, code


def cmd_kn(ctx: Context) -> tuple[dict, int]:
    from .permutohedron import build_Kn, verify_sphere

    a = ctx.args
    limit = a.max_n if a.max_n is not None else DEFAULT_MAX_KN
    if a.n < 2:
        raise InputError("--n must be at least 2")
    guard(a.n, min(limit, DEFAULT_MAX_KN), "kn")
    report = {"n": a.n, "f_vector": build_Kn(a.n).f_vector()}
    code = EXIT_OK
    if a.verify_sphere:
        chk = verify_sphere(a.n, max_n=DEFAULT_MAX_KN)
        report["sphere"] = chk.to_json()
        if not chk.passed and not a.no_fail:
            code = EXIT_COUNTEREXAMPLE
    from . import plotting
    ctx.add_figure("fvector", lambda p: plotting.degree_bars(
        report["f_vector"], p, "face dimension", f"f-vector of K_{a.n}"))
    return report, code


def parse_point(text: str) -> dict:
    """Point JSON with values given as numbers or exact ``"p/q"`` strings.

    Floats are converted together through ``snap`` so near-ties become ties.
    """
    from fractions import Fraction

    from .plmaps import snap

    try:
        data = json.loads(Path(text).read_text() if not text.lstrip().startswith("{") else text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"bad --eval point: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("--eval expects a JSON object")
    floats = [v for key in ("t_params", "t", "z", "x") for v in
              (data.get(key) if isinstance(data.get(key), list) else [data.get(key)])
              if isinstance(v, float)]
    snapped = dict(zip(map(id, floats), snap(floats)))

    def conv(v):
        if isinstance(v, float):
            return snapped[id(v)]
        try:
            return Fraction(v)
        except (TypeError, ValueError) as exc:
            raise InputError(f"--eval: cannot read value {v!r}") from exc

    out = {}
    for key, val in data.items():
        out[key] = [conv(v) for v in val] if isinstance(val, list) else conv(val)
    return out


def _evaluate_point(K: SimplicialComplex, pt: dict) -> dict:
    from .plmaps import (PLError, SmashPoint, phi_eval, phi_membership, phi_membership_via_h,
                         psi_neighbourly_eval, psi_target_partition, smash_membership)

    def s(v):
        return str(v)

    out: dict = {}
    try:
        if "t" in pt and "z" in pt:
            v = phi_eval(K, pt["t_params"], pt["t"], pt["z"])
            out["phi"] = {"basepoint": v.is_basepoint}
            if not v.is_basepoint:
                out["phi"].update({"s": s(v.s), "y": [s(a) for a in v.y],
                                   "partition": [list(b) for b in v.partition().as_sets()],
                                   "member": phi_membership(K, v),
                                   "member_via_h": phi_membership_via_h(K, v)})
        if "x" in pt:
            x = SmashPoint.make(pt["x"])
            y = psi_neighbourly_eval(K, pt["t_params"], x)
            P = psi_target_partition(pt["t_params"])
            out["psi"] = {"image": y.to_json(), "partition": [list(b) for b in P.as_sets()],
                          "member": smash_membership(y, P, K)}
    except KeyError as exc:
        raise InputError(f"--eval point is missing {exc}") from exc
    except (PLError, ComplexError) as exc:
        raise InputError(f"--eval: {exc}") from exc
    return out


def cmd_verify_maps(ctx: Context) -> tuple[dict, int]:
    from .plmaps import verify_maps

    a = ctx.args
    K = load_complex(a.complex)
    guard(K.n, a.max_n, "verify-maps")
    point = parse_point(a.eval) if a.eval else None
    r = verify_maps(K, a.samples, a.seed)
    code = EXIT_OK if r["ok"] or a.no_fail else EXIT_COUNTEREXAMPLE
    out = {"complex": _complex_info(K), "samples": a.samples, **r}
    if point is not None:
        out["evaluation"] = _evaluate_point(K, point)
    return out, code


def _catalog_task(job) -> dict:
    facets, n, name, fields, seed, cache_root = job
    K = SimplicialComplex.from_facets(n, facets, name=name)
    cache = ResultCache(cache_root)
    out = {"name": name, "n": n, "facets": [list(f) for f in K.facets],
           "ghosts": K.has_ghosts, "neighbourly": is_neighbourly(K),
           "integral_homology": reduced_homology(K).describe(), "fields": {}}
    for spec in fields:
        F = Field.parse(spec)

        def compute():
            r = cross_validate(K, F)
            entry = {"poincare": bigraded_betti(K, F).poincare_list(),
                     "hochster_koszul_agree": r.agree,
                     "products_vanish": r.hochster_products_vanish}
            if not K.has_ghosts:
                entry["golod"] = classify_golod(K, F, random.Random(seed)).label
            return entry

        key = cache.key(K, "catalog-entry", F.name, __version__, seed)
        out["fields"][F.name] = cache.get_or_compute(key, compute)
    return out


def run_pool(fn, jobs: list, workers: int) -> list:
    """Order-preserving map, in a process pool when ``workers > 1``."""
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs, chunksize=4))


def cmd_catalog(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    limit = MAX_CATALOG_N if a.neighbourly else MAX_CATALOG_N - 1
    guard(a.max_n, limit, "catalog")
    fields = [parse_field(f).name for f in a.fields.split(",")]
    cat = catalog(a.max_n, min_n=a.min_n, ghosts=a.ghosts, neighbourly_only=a.neighbourly)
    jobs = [(K.facets, K.n, K.name, fields, a.seed, a.cache) for K in cat]
    entries = run_pool(_catalog_task, jobs, a.jobs)
    disagree = [e["name"] for e in entries
                if not all(f["hochster_koszul_agree"] for f in e["fields"].values())]
    counts: dict[str, dict[str, int]] = {}
    for e in entries:
        for fname, f in e["fields"].items():
            if "golod" in f:
                c = counts.setdefault(fname, {})
                c[f["golod"]] = c.get(f["golod"], 0) + 1
    from . import plotting
    ctx.add_figure("verdicts", lambda p: plotting.verdict_counts(
        counts, p, f"catalog n <= {a.max_n}"))
    code = EXIT_OK if not disagree or a.no_fail else EXIT_COUNTEREXAMPLE
    return {"max_n": a.max_n, "min_n": a.min_n, "ghosts": a.ghosts,
            "neighbourly_only": a.neighbourly, "fields": fields, "count": len(entries),
            "verdict_counts": counts, "hochster_koszul_disagreements": disagree,
            "entries": entries}, code


COMMANDS = {
    "betti": (cmd_betti, "integral homology and bigraded Betti numbers"),
    "hochster": (cmd_hochster, "Hochster table and moment-angle Poincaré polynomial"),
    "products": (cmd_products, "do all cup products vanish"),
    "golod": (cmd_golod, "products plus triple Massey products, Golod series"),
    "extractible": (cmd_extractible, "homology shadow of extractibility"),
    "kn": (cmd_kn, "the complex of ordered partitions K_n"),
    "verify-maps": (cmd_verify_maps, "sampled checks of the explicit PL maps"),
    "catalog": (cmd_catalog, "run the suite over all complexes up to isomorphism"),
    "crosscheck": (cmd_crosscheck, "compare the Hochster and Koszul computations"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="golodkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"golodkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_)
        s.add_argument("--out", help="write the JSON report here (default stdout)")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--figure-dir", help="write figures here (default: next to --out)")
        s.add_argument("--no-figures", action="store_true")
        s.add_argument("--no-fail", action="store_true",
                       help="exit 0 even when a counterexample is found")
        if name not in ("kn", "catalog"):
            s.add_argument("--complex", required=True, help='JSON file {"n": .., "facets": [[..]]}, or -')
            s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
        if name in ("betti", "hochster", "products", "golod", "extractible", "crosscheck"):
            s.add_argument("--field", default="0", help="0 for Q, or a prime p")
        if name == "golod":
            s.add_argument("--terms", type=int, default=8, help="series coefficients to list")
        if name == "verify-maps":
            s.add_argument("--samples", type=int, default=1000)
            s.add_argument("--eval", help='also evaluate at a point: JSON object or file with '
                                          '"t_params", "t", "z" (Φ) and/or "x" (Ψ)')
        if name == "kn":
            s.add_argument("--n", type=int, required=True)
            s.add_argument("--verify-sphere", action="store_true")
            s.add_argument("--max-n", type=int, default=None)
        if name == "catalog":
            s.add_argument("--max-n", type=int, default=4)
            s.add_argument("--min-n", type=int, default=1)
            s.add_argument("--fields", default="2,0", help="comma separated, 0 for Q")
            s.add_argument("--ghosts", action="store_true", help="include ghost vertices")
            s.add_argument("--neighbourly", action="store_true", help="neighbourly complexes only")
            s.add_argument("--jobs", type=int, default=1)
            s.add_argument("--cache", help="directory of the content-addressed result cache")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = Context(args)
    fn, _ = COMMANDS[args.command]
    try:
        result, code = fn(ctx)
    except InputError as exc:
        print(f"golodkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeError as exc:
        print(f"golodkit: size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE
    report = {"command": args.command, "version": __version__, "seed": args.seed,
              "result": result, "figures": ctx.figures}
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
