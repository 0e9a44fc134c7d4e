"""Command-line interface: ``chromaloc <command> ...``.

Exit codes: 0 ok, 2 usage or bad input, 3 budget or cap exceeded, 4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import basis, graph as gr, limits, spectra, tube
from .chromatic import BudgetExceeded, chromatic_coefficients, chromatic_dc, chromatic_expansion
from .hom import CountBudgetExceeded, hom_count, inj_count
from .poly import format_poly

log = logging.getLogger("chromaloc")

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_float(x: float) -> str:
    return f"{x:.15g}"


def fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return fmt_float(z.real)
    return f"{fmt_float(z.real)}{z.imag:+.15g}i"


# ---------------------------------------------------------------------------
# configuration

def read_config(path: str | None) -> dict:
    """key=value lines; '#' starts a comment; malformed lines are skipped with a warning."""
    if not path:
        return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            log.warning("%s:%d: ignoring line without '='", path, lineno)
            continue
        out[key.strip().replace("-", "_")] = value.strip().strip('"').strip("'")
    return out


def _setting(args, name, cast, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    if name in args.config_values:
        return cast(args.config_values[name])
    return default


def _threads(args) -> int:
    raw = os.environ.get("CHROMALOC_THREADS") or args.config_values.get("threads") or "1"
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"CHROMALOC_THREADS must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# graph input

def _add_graph_input(p, required=True):
    grp = p.add_mutually_exclusive_group(required=required)
    grp.add_argument("--g6", help="graph6 string")
    grp.add_argument("--edges", help="edge-list file: first line 'n m', then one 'u v' per line")
    grp.add_argument("--gen", help="generator family:params, e.g. cycle:5, torus:2,4, random-regular:3,16,5")


def load_graph(args) -> gr.SimpleGraph:
    if args.g6:
        return gr.parse_graph6(args.g6)
    if args.edges:
        return gr.parse_edge_list(Path(args.edges).read_text())
    return gr.generate(args.gen, seed=args.seed)


def parse_designator(text: str, seed: int) -> gr.SimpleGraph:
    """A graph given as generator spec, edge-list file or graph6 string."""
    name = text.partition(":")[0]
    if name in gr.GENERATORS:
        return gr.generate(text, seed=seed)
    if os.path.exists(text):
        return gr.parse_edge_list(Path(text).read_text())
    return gr.parse_graph6(text)


def _emit(args, text: str):
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_chrompoly(args):
    g = load_graph(args)
    budget = _setting(args, "budget", int, 2_000_000)
    p = chromatic_dc(g, budget=budget) if args.method == "dc" else chromatic_expansion(g)
    if args.format == "json":
        text = p.to_json() + "\n"
    elif args.format == "poly":
        text = format_poly(p) + "\n"
    else:
        text = " ".join(str(c) for c in p.coeffs) + "\n"
    _emit(args, text)


def _roots(args, g):
    max_degree = _setting(args, "max_degree", int, spectra.DEFAULT_MAX_DEGREE)
    return spectra.find_roots(chromatic_dc(g, budget=_setting(args, "budget", int, 2_000_000)),
                              max_degree=max_degree)


def cmd_roots(args):
    g = load_graph(args)
    m = _roots(args, g)
    lines = ["re,im,multiplicity"] + [f"{fmt_float(z.real)},{fmt_float(z.imag)},{k}" for z, k in m.roots]
    _emit(args, "\n".join(lines) + "\n")
    if args.svg:
        from .plotting import plot_roots
        c = _setting(args, "sokal_c", float, spectra.SOKAL_C)
        radius = c * g.max_degree if g.max_degree else None
        plot_roots([(args.g6 or args.gen or args.edges, m.flat())], args.svg, radius)


def cmd_moments(args):
    g = load_graph(args)
    k = args.kmax
    if args.method == "hom":
        if k > basis.DEFAULT_K_CAP:
            raise UsageError(f"--method hom supports --kmax up to {basis.DEFAULT_K_CAP}")
        vals = [basis.moment_formula(i).evaluate(g) for i in range(1, k + 1)]
        for v in vals:
            if v.denominator != 1:
                raise ArithmeticError(f"non-integral power sum {v}")
        out = [int(v) for v in vals]
    elif args.method == "newton":
        out = spectra.power_sums(chromatic_dc(g, budget=_setting(args, "budget", int, 2_000_000)), k)
    else:
        m = _roots(args, g)
        out = [spectra.holomorphic_moment(m, i) * m.total for i in range(1, k + 1)]
    if args.normalize:
        lines = [fmt_rational(Fraction(v, g.n)) if isinstance(v, int) else fmt_complex(v / g.n) for v in out]
    else:
        lines = [str(v) if isinstance(v, int) else fmt_complex(v) for v in out]
    _emit(args, "\n".join(lines) + "\n")


def cmd_hom(args):
    h = parse_designator(args.pattern, args.seed)
    g = parse_designator(args.target, args.seed)
    budget = _setting(args, "budget", int, 50_000_000)
    val = inj_count(h, g, budget) if args.inj else hom_count(h, g, budget)
    _emit(args, (fmt_rational(Fraction(val, g.n)) if args.density else str(val)) + "\n")


def _table_lines(title: str, rows: list[dict]) -> list[str]:
    lines = [f"{title} ="]
    for r in rows:
        name = basis.graph_name(gr.parse_graph6(r["graph6"]))
        lines.append(f"  {r['coefficient']} · hom({name}, ·)")
    return lines


def cmd_basis(args):
    cap = _setting(args, "k_cap", int, basis.DEFAULT_K_CAP)
    if args.emit_appendix:
        tables = basis.emit_appendix(args.k, cap=cap)
        text = basis.appendix_json(tables) + "\n" if args.format == "json" else basis.appendix_text(tables)
        _emit(args, text)
        return
    e_rows = basis.formula_rows(basis.coefficient_formula(args.k, cap))
    p_rows = basis.formula_rows(basis.moment_formula(args.k, cap))
    if args.format == "json":
        _emit(args, json.dumps({"k": args.k, "e": e_rows, "p": p_rows}, indent=1) + "\n")
        return
    lines = _table_lines(f"e_{args.k}(G)", e_rows) + _table_lines(f"p_{args.k}(G)", p_rows)
    _emit(args, "\n".join(lines) + "\n")


def _window(text: str):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4 or vals[0] >= vals[1] or vals[2] >= vals[3]:
        raise UsageError("--window takes re_min,re_max,im_min,im_max")
    return tuple(vals)


def cmd_tube(args):
    if args.n < 1:
        raise UsageError("--n must be positive")
    p = tube.tube_chromatic(args.n)
    _emit(args, " ".join(str(c) for c in p.coeffs) + "\n")
    if not args.curve:
        return
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sample = tube.limit_curve_sample(_window(args.window), args.grid, args.tol)
    tube.write_curve_csv(out / "curve.csv", sample)
    tube.write_special_csv(out / "special.csv", sample)
    roots = spectra.find_roots(p, max_degree=max(4 * args.n, spectra.DEFAULT_MAX_DEGREE))
    with open(out / "roots.csv", "w") as fh:
        fh.write(roots.to_csv())
    from .plotting import plot_tube_curve
    plot_tube_curve(sample, roots.flat(), out / "tube.svg", title=f"T_{args.n} = C4 x P_{args.n}")


def cmd_girth_bound(args):
    g = load_graph(args)
    if args.sokal_c:
        cs = args.sokal_c
    elif "sokal_c" in args.config_values:
        cs = [float(args.config_values["sokal_c"])]
    else:
        # the disc constant is only known to lie below 8, so report both
        cs = [spectra.SOKAL_C, 8.0]
    budget = _setting(args, "budget", int, 2_000_000)
    poly = None
    if not args.no_exact:
        try:
            poly = chromatic_dc(g, budget=budget)
        except BudgetExceeded:
            log.warning("chromatic polynomial out of budget; reporting the bound only")
    lines = ["C,q,estimate,bound,exact,error,holds"]
    for q in args.q:
        rows = []
        for c in cs:
            try:
                est = limits.girth_estimate(g, Fraction(q), c, poly=poly, exact=poly is not None)
            except limits.OutOfRange:
                rows.append(f"{fmt_float(c)},{fmt_rational(Fraction(q))},,,,,out_of_range")
                continue
            exact = "" if est.exact is None else fmt_float(est.exact)
            err = "" if est.error is None else fmt_float(est.error)
            holds = "" if est.exact is None else str(est.holds()).lower()
            rows.append(f"{fmt_float(c)},{fmt_rational(est.q)},{fmt_float(est.estimate)},"
                        f"{fmt_float(est.bound)},{exact},{err},{holds}")
        if all(r.endswith(",out_of_range") for r in rows):
            raise limits.OutOfRange(f"q = {q} must exceed C*d for at least one C in {cs}")
        lines.extend(rows)
    _emit(args, "\n".join(lines) + "\n")


def parse_sizes(text: str) -> list[int]:
    """'a..b', 'a..b:step' or a comma list."""
    try:
        if ".." in text:
            rng, _, step = text.partition(":")
            a, b = rng.split("..")
            return list(range(int(a), int(b) + 1, int(step) if step else 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}")


def _parse_q(text: str):
    try:
        return Fraction(text) if "j" not in text else complex(text)
    except ValueError:
        raise UsageError(f"bad sample point {text!r}")


def cmd_converge(args):
    name, _, params = args.family.partition(":")
    try:
        fam = limits.family(name, [int(x) for x in params.split(",") if x], seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    q_list = [_parse_q(x) for x in args.q.split(",")] if args.q else None
    patterns = [parse_designator(t, args.seed) for t in args.pattern]
    series = limits.run_convergence(fam, parse_sizes(args.sizes), K=args.kmax, T_list=patterns, q_list=q_list,
                                    hom_k=min(args.kmax, args.hom_kmax), threads=_threads(args),
                                    budget=_setting(args, "budget", int, 200_000))
    _emit(args, series.to_jsonl())
    if args.svg_prefix:
        from .plotting import plot_convergence
        plot_convergence(series, f"{args.svg_prefix}_moments.svg", "moments", reference=1.0)
        ref = None
        if args.reference_q:
            ref = limits.tree_entropy(fam.degree, args.reference_q)
        plot_convergence(series, f"{args.svg_prefix}_entropy.svg", "entropy", reference=ref)


def cmd_balls(args):
    g = load_graph(args)
    dist = limits.ball_distribution(g, args.radius)
    lines = ["code,probability"] + [f"{c.decode()},{fmt_rational(w)}" for c, w in dist.weights.items()]
    _emit(args, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised generators (default 0)")
    common.add_argument("--config", help="key=value settings file (seed, sokal_c, budget, threads, max_degree)")
    common.add_argument("-o", "--output", help="write the main output here instead of stdout")
    common.add_argument("--budget", type=int, help="search budget for exact counting")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="chromaloc", description="Chromatic polynomials, roots and local limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chrompoly", parents=[common], help="exact chromatic polynomial",
                       description="Prints coefficients from z^0 upwards, space separated (or json / poly).")
    _add_graph_input(p)
    p.add_argument("--method", choices=["dc", "expansion"], default="dc")
    p.add_argument("--format", choices=["coeffs", "json", "poly"], default="coeffs")
    p.set_defaults(func=cmd_chrompoly)

    p = sub.add_parser("roots", parents=[common], help="chromatic roots",
                       description="CSV re,im,multiplicity; --svg adds a scatter with the Sokal disc.")
    _add_graph_input(p)
    p.add_argument("--svg")
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--sokal-c", dest="sokal_c", type=float)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("moments", parents=[common], help="power sums p_1..p_K of the chromatic roots",
                       description="One value per line. newton and hom are exact integers; roots prints floats.")
    _add_graph_input(p)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--method", choices=["roots", "newton", "hom"], default="newton")
    p.add_argument("--normalize", action="store_true", help="print p_k/|V| (num/den for exact methods)")
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("hom", parents=[common], help="hom(H, G) or inj(H, G)",
                       description="H and G are generator specs, edge-list files or graph6 strings.")
    p.add_argument("pattern")
    p.add_argument("target")
    p.add_argument("--inj", action="store_true")
    p.add_argument("--density", action="store_true", help="divide by |V(G)|, printed as num/den")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("basis", parents=[common], help="e_k and p_k as combinations of hom counts",
                       description="Text lines 'coef · hom(T, ·)'; --emit-appendix prints e_0..e_{k-1} and p_0..p_k.")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--emit-appendix", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--k-cap", dest="k_cap", type=int)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("tube", parents=[common], help="chromatic polynomial of C4 x P_n",
                       description="Coefficients from z^0 upwards; --curve writes curve.csv, special.csv, "
                                   "roots.csv and tube.svg into --out-dir.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--curve", action="store_true")
    p.add_argument("--window", default="-1,5,-3.5,3.5")
    p.add_argument("--grid", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=0.02)
    p.add_argument("--out-dir", default="tube_out")
    p.set_defaults(func=cmd_tube)

    p = sub.add_parser("girth-bound", parents=[common], help="large-girth entropy estimate and its error bound",
                       description="CSV C,q,estimate,bound,exact,error,holds with one row per (q, C); "
                                   "q below C*d gives holds=out_of_range.")
    _add_graph_input(p)
    p.add_argument("--q", type=Fraction, action="append", required=True, help="repeatable; rational allowed")
    p.add_argument("--sokal-c", dest="sokal_c", type=float, action="append",
                   help="disc constant, repeatable (default: both 7.963907 and 8)")
    p.add_argument("--no-exact", action="store_true", help="skip the exact value (bound-only)")
    p.set_defaults(func=cmd_girth_bound)

    p = sub.add_parser("converge", parents=[common], help="moments, hom densities and entropy along a family",
                       description="JSON lines, one record per size.")
    p.add_argument("--family", required=True, help="path, cycle, tube, torus:d, random-regular:d,girth")
    p.add_argument("--sizes", required=True, help="a..b[:step] or a comma list")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--hom-kmax", dest="hom_kmax", type=int, default=5)
    p.add_argument("--q", help="comma list of sample points, e.g. 3,30,40+5j")
    p.add_argument("--pattern", action="append", default=[], help="connected pattern for hom densities")
    p.add_argument("--svg-prefix")
    p.add_argument("--reference-q", dest="reference_q", type=float)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("balls", parents=[common], help="distribution of rooted R-balls",
                       description="CSV code,probability.")
    _add_graph_input(p)
    p.add_argument("--radius", type=int, default=1)
    p.set_defaults(func=cmd_balls)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.config_values = read_config(args.config)
        if "seed" in args.config_values and "--seed" not in (argv if argv is not None else sys.argv):
            args.seed = int(args.config_values["seed"])
        args.func(args)
    except (UsageError, gr.GraphError, limits.OutOfRange, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, CountBudgetExceeded, basis.CapExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (spectra.NonConvergence, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
