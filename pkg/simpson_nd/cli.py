"""Command-line interface: simpson-nd verify | moments | derive | family | compound | catalog | rule | apply."""
import csv
import functools
import io
import json
import re
import sys

import click

from simpson_nd import claims as claim_suite
from simpson_nd import compound as compounding
from simpson_nd import families
from simpson_nd.errors import CubatureError
from simpson_nd.exactness import degree_targets, derive_lambda_rule, exactness_degree, solve_weights
from simpson_nd.expr import parse, parse_monomials, to_function, to_monomial_poly
from simpson_nd.extensions import OUTPUT_FORMATS, Settings, configure_logging
from simpson_nd.models.polynomial import graded_monomials, monomial_label
from simpson_nd.models.region import region_from_alias, region_from_dict
from simpson_nd.models.report import Infeasible, UniqueSolution
from simpson_nd.models.rule import CATALOG, CubatureRule, named_rule, rule_properties
from simpson_nd.models.scalar import ZERO, as_scalar, format_scalar, scalar_to_dict, to_float


def _reports_errors(fn):
    """Domain errors become 'error: <message>' on stderr and exit status 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CubatureError as exc:
            click.echo(f"error: {exc}", err=True)
            raise click.exceptions.Exit(1)

    return wrapper


def _emit(ctx, payload, text, rows=None):
    fmt = ctx.obj["format"]
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    elif fmt == "csv":
        if rows is None:
            raise click.UsageError(f"csv output is not available for '{ctx.info_name}'")
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        click.echo(buffer.getvalue(), nl=False)
    else:
        click.echo(text)


def _load_region(alias, region_file):
    if region_file:
        return region_from_dict(json.load(region_file))
    if not alias:
        raise click.UsageError("give --region or --region-file")
    return region_from_alias(alias)


def _load_rule(name, dim, rule_file):
    if rule_file:
        return CubatureRule.from_dict(json.load(rule_file))
    if not name:
        raise click.UsageError("give --rule or --rule-file")
    return named_rule(name, dim)


def _scalar_arg(text):
    try:
        return as_scalar(text.strip())
    except (TypeError, ValueError, ZeroDivisionError):
        raise click.BadParameter(f"'{text}' is not a rational number")


def _levels(text):
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"'{text}' is not a level list such as 1..5 or 1,2,4")


_JUXTAPOSED = re.compile(r"^[xyz]{2,}$")


def _monomials(item, dimension):
    if _JUXTAPOSED.match(item):
        item = "*".join(item)
    return parse_monomials(item, dimension)


def _targets(text, dimension):
    """'deg2', 'deg2,-xy' or an explicit monomial list such as 'x^2, y^2'."""
    degree, include, exclude = None, [], []
    for item in (part.strip() for part in text.split(",")):
        if not item:
            continue
        if item.lower().startswith("deg") and item[3:].isdigit():
            degree = int(item[3:])
        elif item.startswith("-"):
            exclude.extend(_monomials(item[1:].strip(), dimension))
        else:
            include.extend(_monomials(item, dimension))
    targets = degree_targets(dimension, degree, exclude) if degree is not None else []
    targets += [alpha for alpha in include if alpha not in targets]
    return [alpha for alpha in targets if alpha not in exclude]


def _points(text):
    """'5/9,7/9; 0,0; 1,2' -> list of exact points."""
    return [tuple(_scalar_arg(c) for c in point.split(",")) for point in text.split(";") if point.strip()]


@click.group()
@click.option("--format", "fmt", type=str, default=None, help="text, json or csv (default $SIMPSON_ND_FORMAT or text)")
@click.pass_context
def cli(ctx, fmt):
    """Exact Simpson-style cubature rules over simplices, cubes, polygons and the disc."""
    settings = Settings.from_env()
    fmt = (fmt or settings.output_format).lower()
    if fmt not in OUTPUT_FORMATS:
        raise click.UsageError(f"unknown output format '{fmt}' (choose from {', '.join(OUTPUT_FORMATS)})")
    configure_logging(settings.log_level)
    ctx.obj = {"format": fmt, "settings": settings}


@cli.command()
@click.option("--rule", "name", help="catalog name, e.g. CR3 or CR3(3)")
@click.option("--dim", type=int, default=None)
@click.option("--rule-file", type=click.File("r"), default=None, help="rule JSON as written by 'rule --format json'")
@click.option("--max-degree", type=int, default=None)
@click.option("--all", "run_all", is_flag=True, help="run the whole claim suite")
@click.option("--workers", type=int, default=None)
@click.pass_context
@_reports_errors
def verify(ctx, name, dim, rule_file, max_degree, run_all, workers):
    """Certify exactness degrees, or reproduce every claim with --all."""
    if run_all:
        results = claim_suite.run_claims(workers or ctx.obj["settings"].workers)
        rows = [["claim", "confirmed", "detail"]] + [[r.name, r.confirmed, r.detail] for r in results]
        confirmed = sum(r.confirmed for r in results)
        text = "\n".join([r.line() for r in results] + [f"{confirmed}/{len(results)} claims confirmed"])
        _emit(ctx, [r.to_dict() for r in results], text, rows)
        if confirmed != len(results):
            raise click.exceptions.Exit(1)
        return
    rule = _load_rule(name, dim, rule_file)
    if max_degree is None:
        max_degree = (rule.claimed_degree if rule.claimed_degree is not None else 2) + 2
    report = exactness_degree(rule, max_degree)
    rows = [
        ["label", "degree", "failing", "residual", "tested"],
        [report.label, report.degree, report.failing_label or "", format_scalar(report.residual) if report.residual is not None else "", report.tested],
    ]
    _emit(ctx, report.to_dict(), str(report), rows)


@cli.command()
@click.option("--region", "alias", help="simplex:N, cube:N, disc, trapezoid-paper, hexagon-paper")
@click.option("--region-file", type=click.File("r"), default=None)
@click.option("--degree", type=int, default=2, show_default=True)
@click.pass_context
@_reports_errors
def moments(ctx, alias, region_file, degree):
    """Exact monomial moments up to a total degree."""
    region = _load_region(alias, region_file)
    entries = []
    for alpha in graded_monomials(region.dimension, degree):
        value = region.moment(alpha)
        entries.append((monomial_label(alpha), value))
    payload = {
        "region": region.label,
        "moments": [{"monomial": m, "value": scalar_to_dict(v), "decimal": to_float(v)} for m, v in entries],
    }
    width = max(len(m) for m, _ in entries)
    text = "\n".join(f"{m:>{width}} = {format_scalar(v)}" for m, v in entries)
    rows = [["monomial", "value", "decimal"]] + [[m, format_scalar(v), repr(to_float(v))] for m, v in entries]
    _emit(ctx, payload, text, rows)


def _outcome_text(outcome, unknown):
    if isinstance(outcome, UniqueSolution):
        values = ", ".join(format_scalar(v) for v in outcome.values)
        return f"unique: {unknown} = {values}"
    if isinstance(outcome, Infeasible):
        text = f"infeasible ({outcome.reason}): {', '.join(outcome.equations)}"
        if outcome.mismatch is not None:
            text += f"; mismatch {format_scalar(outcome.mismatch)}"
        return text
    return f"underdetermined: nullity {outcome.nullity}"


@cli.command()
@click.option("--region", "alias", help="simplex:N, cube:N, disc, trapezoid-paper, hexagon-paper")
@click.option("--region-file", type=click.File("r"), default=None)
@click.option("--targets", default="deg2", show_default=True, help="deg2, deg2,-xy or an explicit list such as 'x^2, y^2'")
@click.option("--nodes", default=None, help="solve for free weights at these nodes, e.g. '0,0; 1,0; 0,1'")
@click.pass_context
@_reports_errors
def derive(ctx, alias, region_file, targets, nodes):
    """Solve for lambda (midpoint plus vertex rule) or for free weights at given nodes.

    An infeasible system is a finding, not an error: the exit status stays 0.
    """
    region = _load_region(alias, region_file)
    alphas = _targets(targets, region.dimension)
    if nodes:
        outcome = solve_weights(region, _points(nodes), alphas)
        rule, unknown = None, "weights"
    else:
        outcome, rule = derive_lambda_rule(region, alphas)
        unknown = "lambda"
    payload = {"region": region.label, "targets": [monomial_label(a) for a in alphas], **outcome.to_dict()}
    text = _outcome_text(outcome, unknown)
    if rule is not None:
        payload["rule"] = rule.to_dict()
        text += "\n" + rule.describe()
    rows = [["kind", "values"], [outcome.kind, " ".join(format_scalar(v) for v in getattr(outcome, "values", ()))]]
    _emit(ctx, payload, text, rows)


def _residual_rows(residuals):
    return [["monomial", "residual"]] + [[n, format_scalar(r)] for n, r in zip(residuals.names, residuals.residuals)]


def _residual_text(residuals):
    state = "all residuals vanish" if residuals.all_zero() else "residuals do not all vanish"
    lines = [state] + [f"  {n}: {format_scalar(r)}" for n, r in zip(residuals.names, residuals.residuals)]
    return "\n".join(lines)


@cli.command()
@click.argument("kind", type=click.Choice(["triangle", "square", "trapezoid", "simplex3"]))
@click.option("--param", default=None, help="c (triangle), d (square) or a1..a8 comma separated (simplex3)")
@click.option("--lam", default=None, help="lambda for simplex3")
@click.option("--conjugate", is_flag=True, help="trapezoid: use the conjugate root")
@click.option("--search", is_flag=True, help="simplex3: search 0/1 placements")
@click.option("--probe", type=int, default=None, help="simplex3: least-squares starts for lambda = 0")
@click.pass_context
@_reports_errors
def family(ctx, kind, param, lam, conjugate, search, probe):
    """Evaluate the parameterised node systems and their published solution families."""
    if kind in ("triangle", "square"):
        if param is None:
            roots = families.triangle_selector_roots() if kind == "triangle" else families.square_selector_roots()
            payload = {"family": kind, "selector_roots": [str(r) for r in roots]}
            text = f"{kind} selector roots: {', '.join(str(r) for r in roots)}"
            _emit(ctx, payload, text, [["root"]] + [[str(r)] for r in roots])
            return
        value = _scalar_arg(param)
        check = families.verify_triangle_family(value) if kind == "triangle" else families.verify_square_family(value)
        head = f"{kind} family at {format_scalar(value)}: lambda = {format_scalar(check.lam)}"
        _emit(ctx, check.to_dict(), head + "\n" + _residual_text(check.residuals), _residual_rows(check.residuals))
        return
    if kind == "trapezoid":
        a, b, c, d, lam_value = families.trapezoid_family_point(conjugate)
        residuals = families.trapezoid_system(a, b, c, d, lam_value)
        payload = {"family": kind, "d": scalar_to_dict(d), "lambda": scalar_to_dict(lam_value), **residuals.to_dict()}
        head = f"trapezoid at d = {format_scalar(d)}, lambda = {format_scalar(lam_value)}"
        _emit(ctx, payload, head + "\n" + _residual_text(residuals), _residual_rows(residuals))
        return
    if search:
        hits = families.search_simplex3_vertex_solutions()
        payload = [{"a": list(h.a), "lambda": format_scalar(h.lam)} for h in hits]
        text = "\n".join(f"a = {h.a}: lambda = {format_scalar(h.lam)}" for h in hits) or "no vertex placements"
        _emit(ctx, payload, text, [["a", "lambda"]] + [[" ".join(map(str, h.a)), format_scalar(h.lam)] for h in hits])
        return
    if probe is not None:
        result = families.probe_simplex3_lambda_zero(starts=probe)
        payload = {"best_norm": result.best_norm, "best_point": list(result.best_point), "starts": result.starts}
        text = f"lambda = 0 probe over {result.starts} starts: best residual norm {result.best_norm:.3e}"
        _emit(ctx, payload, text, [["best_norm", "starts"], [result.best_norm, result.starts]])
        return
    if param is None or lam is None:
        raise click.UsageError("simplex3 needs --param a1,...,a8 and --lam, or --search, or --probe")
    a = [_scalar_arg(v) for v in param.split(",")]
    if len(a) != 8:
        raise click.BadParameter("simplex3 takes eight placement parameters", param_hint="--param")
    residuals = families.simplex3_face_system(a, _scalar_arg(lam))
    _emit(ctx, residuals.to_dict(), _residual_text(residuals), _residual_rows(residuals))


@cli.command("compound")
@click.option("--rule", "name", required=True)
@click.option("--dim", type=int, default=None)
@click.option("--expr", "source", required=True, help="integrand, e.g. 'exp(x+y)'")
@click.option("--levels", default="1..5", show_default=True)
@click.option("--reference", type=float, default=None, help="exact integral; adaptive quadrature when omitted")
@click.option("--workers", type=int, default=None)
@click.pass_context
@_reports_errors
def compound_cmd(ctx, name, dim, source, levels, reference, workers):
    """Convergence study of a compounded rule."""
    rule = named_rule(name, dim)
    fn = to_function(parse(source), rule.dimension)
    if reference is None:
        reference = compounding.reference_integral(rule.region, fn)
    study = compounding.convergence_study(rule, _levels(levels), fn, reference, workers or ctx.obj["settings"].workers)
    try:
        order = compounding.convergence_order(
            [compounding.CompoundEstimate(r.level, r.cells, r.estimate) for r in study], reference
        )
        order_text = f"fitted order {order:.3f}"
    except CubatureError as exc:
        order, order_text = None, f"fitted order unavailable: {exc}"
    rows = [["level", "cells", "estimate", "error", "ratio"]]
    rows += [[r.level, r.cells, repr(r.estimate), repr(r.error), "" if r.ratio is None else repr(r.ratio)] for r in study]
    lines = [f"{rule.label} on {source}, reference {reference:.16g}"]
    lines += [
        f"  level {r.level:>2}  cells {r.cells:>6}  estimate {r.estimate:.16g}  error {r.error:.3e}"
        + ("" if r.ratio is None else f"  ratio {r.ratio:.2f}")
        for r in study
    ]
    lines.append(order_text)
    payload = {
        "rule": rule.label,
        "reference": reference,
        "rows": [dict(zip(rows[0], [r.level, r.cells, r.estimate, r.error, r.ratio])) for r in study],
        "order": order,
    }
    _emit(ctx, payload, "\n".join(lines), rows)


@cli.command()
@click.option("--dim", type=int, default=2, show_default=True, help="dimension for CR1, CR2 and CR3")
@click.pass_context
@_reports_errors
def catalog(ctx, dim):
    """Every named rule with exact and decimal weights."""
    entries, blocks, rows = [], [], [["rule", "node", "weight", "decimal"]]
    for name, entry in CATALOG.items():
        rule = named_rule(name, dim if entry.takes_dimension else None)
        props = rule_properties(rule)
        entries.append({**rule.to_dict(), "summary": entry.summary, "properties": props})
        lam = f", lambda = {format_scalar(rule.lam)}" if rule.lam is not None else ""
        blocks.append(f"{rule.describe()}\n  claimed degree {rule.claimed_degree}{lam}; {entry.summary}")
        for node, weight in zip(rule.nodes, rule.weights):
            rows.append([rule.label, " ".join(format_scalar(x) for x in node), format_scalar(weight), repr(to_float(weight))])
    _emit(ctx, entries, "\n\n".join(blocks), rows)


@cli.command("rule")
@click.option("--name", required=True)
@click.option("--dim", type=int, default=None)
@click.pass_context
@_reports_errors
def rule_cmd(ctx, name, dim):
    """One named rule in the rule JSON schema."""
    rule = named_rule(name, dim)
    rows = [["node", "weight", "decimal"]]
    rows += [[" ".join(format_scalar(x) for x in n), format_scalar(w), repr(to_float(w))] for n, w in zip(rule.nodes, rule.weights)]
    _emit(ctx, rule.to_dict(), rule.describe(), rows)


@cli.command()
@click.option("--rule", "name", required=True)
@click.option("--dim", type=int, default=None)
@click.option("--expr", "source", required=True)
@click.pass_context
@_reports_errors
def apply(ctx, name, dim, source):
    """Apply a rule to an expression: exactly for polynomials, in floating point otherwise."""
    rule = named_rule(name, dim)
    tree = parse(source)
    try:
        poly = to_monomial_poly(tree, rule.dimension)
    except CubatureError:
        poly = None
    if poly is not None:
        value = rule.apply_poly(poly)
        integral = sum((coef * rule.region.moment(alpha) for alpha, coef in poly.terms.items()), ZERO)
        payload = {
            "rule": rule.label,
            "expr": source,
            "exact": True,
            "value": scalar_to_dict(value),
            "integral": scalar_to_dict(integral),
            "residual": scalar_to_dict(value - integral),
        }
        text = f"{rule.label}({source}) = {format_scalar(value)}  (integral {format_scalar(integral)})"
        rows = [["value", "integral", "residual"], [format_scalar(value), format_scalar(integral), format_scalar(value - integral)]]
    else:
        value = rule.apply_fn(to_function(tree, rule.dimension))
        payload = {"rule": rule.label, "expr": source, "exact": False, "value": value}
        text = f"{rule.label}({source}) ≈ {value:.16g}"
        rows = [["value"], [repr(value)]]
    _emit(ctx, payload, text, rows)


def run(argv=None) -> int:
    """Entry point returning the exit status: 0 success, 1 domain error, 2 usage error."""
    try:
        status = cli.main(args=argv, prog_name="simpson-nd", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    return status if isinstance(status, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
