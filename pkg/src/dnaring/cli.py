"""Command-line front end.

Exit codes: 0 when nothing was violated or mismatched, 1 for a violated
bound, failed verification or oracle mismatch (mismatches only count under
--strict), 2 for usage errors.
"""

from __future__ import annotations

import io
import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import bounds as bd
from . import codes, dna, gaumap
from . import reedmuller as rm
from .errors import DnaRingError, ParseError
from .ring import (
    LAMBDAS,
    format_element,
    get_ring,
    ideal_generators,
    parse_element,
)

FORMATS = ("json", "csv", "fasta", "table")
DEFAULTS = {
    "lambda": "2+2w",
    "map_params": ",".join(format_element(p) for p in gaumap.CANONICAL_PARAMS),
    "format": "json",
    "guard": str(codes.DEFAULT_GUARD),
    "jobs": "1",
    "strict": "false",
}


class RingElementParam(click.ParamType):
    name = "ring-element"

    def convert(self, value, param, ctx):
        if value is None or not isinstance(value, str):
            return value
        try:
            return parse_element(value)
        except ParseError as exc:
            self.fail(str(exc), param, ctx)


ELEMENT = RingElementParam()


class DomainError(click.ClickException):
    """Invalid domain input (bad z, r > m, oversized enumeration...)."""

    exit_code = 2


class Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except DnaRingError as exc:
            raise DomainError(f"{type(exc).__name__}: {exc}") from exc


def read_config(path) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def setting(ctx, name, given):
    """Flag value if given, else the config file value, else the default."""
    if given is not None:
        return given
    return ctx.obj["config"].get(name, DEFAULTS.get(name))


def resolve_element(ctx, name, given):
    value = setting(ctx, name, given)
    if value is None:
        raise click.UsageError(f"--{name.replace('_', '-')} is required")
    if isinstance(value, str):
        try:
            return parse_element(value)
        except ParseError as exc:
            raise click.BadParameter(str(exc), param_hint=f"--{name}")
    return value


def resolve_map(ctx, lam=None) -> gaumap.GauMap:
    lam = resolve_element(ctx, "lambda", lam)
    if lam not in LAMBDAS:
        raise click.BadParameter("lambda must be one of 2, 2w, 2+2w", param_hint="--lambda")
    params = [parse_element(p) for p in setting(ctx, "map_params", ctx.obj["map_params"]).split(",")]
    return gaumap.build_gau_map(lam, *params)


def fmt(ctx, given):
    value = setting(ctx, "format", given)
    if value not in FORMATS:
        raise click.BadParameter(f"format must be one of {', '.join(FORMATS)}", param_hint="--format")
    return value


def strict(ctx) -> bool:
    return ctx.obj["strict"] or str(ctx.obj["config"].get("strict", "false")).lower() in ("1", "true", "yes")


def guard(ctx) -> int:
    value = int(setting(ctx, "guard", ctx.obj["guard"]))
    if value <= 0:
        raise click.BadParameter("guard must be positive", param_hint="--guard")
    return value


def emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True, indent=2))


def elements(xs) -> list[str]:
    return [format_element(x) for x in sorted(xs)]


@click.group(cls=Group)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="key=value file; flags win.")
@click.option("--map-params", default=None, help="Six comma-separated free entries a11,a22,a14,a23,a12,a13.")
@click.option("--guard", default=None, type=int, help="Cap on enumerated span size.")
@click.option("--strict", is_flag=True, default=False, help="Exit 1 on formula/oracle mismatches.")
@click.option("--jobs", default=None, type=int, help="Worker processes for sweeps.")
@click.pass_context
def main(ctx, config_path, map_params, guard, strict, jobs):
    """Codes over Z4 + wZ4 and their DNA images."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = read_config(config_path) if config_path else {}
    ctx.obj["map_params"] = map_params
    ctx.obj["guard"] = guard
    ctx.obj["strict"] = strict
    ctx.obj["jobs"] = jobs


# ---------------------------------------------------------------------------

@main.command("ring-info")
@click.option("--theta", type=ELEMENT, default=None)
@click.option("--format", "out_format", default=None)
@click.pass_context
def ring_info(ctx, theta, out_format):
    """Classification, units, zero divisors and ideal chain of R_theta."""
    theta = resolve_element(ctx, "theta", theta)
    ring = get_ring(theta)
    info = {
        "theta": format_element(ring.theta),
        "classification": ring.classification,
        "units": elements(ring.units),
        "zero_divisors": elements(ring.zero_divisors),
    }
    if ring.is_chain:
        info["ideal_chain"] = [
            {"generators": [format_element(g) for g in ideal_generators(ring, ideal)], "elements": elements(ideal)}
            for ideal in ring.ideal_chain()
        ]
    if fmt(ctx, out_format) == "table":
        for key in ("theta", "classification"):
            click.echo(f"{key}: {info[key]}")
        click.echo("units: " + " ".join(info["units"]))
        click.echo("zero divisors: " + " ".join(info["zero_divisors"]))
        if ring.is_chain:
            click.echo("ideal chain: " + " < ".join(f"<{i['generators'][0]}>" for i in info["ideal_chain"]))
    else:
        emit(info)


# ---------------------------------------------------------------------------

@main.group("gau-map")
def gau_map():
    """Emit, count and verify Gau maps."""


@gau_map.command("emit")
@click.option("--lambda", "lam", type=ELEMENT, default=None)
@click.pass_context
def gau_map_emit(ctx, lam):
    """Print the map as element<TAB>dinucleotide lines."""
    click.echo(resolve_map(ctx, lam).to_text(), nl=False)


@gau_map.command("enumerate-count")
@click.option("--lambda", "lam", type=ELEMENT, default=None)
@click.pass_context
def gau_map_count(ctx, lam):
    """Number of valid maps for lambda."""
    lam = resolve_element(ctx, "lambda", lam)
    if lam not in LAMBDAS:
        raise click.BadParameter("lambda must be one of 2, 2w, 2+2w", param_hint="--lambda")
    click.echo(len(gaumap.enumerate_gau_maps(lam)))


@gau_map.command("verify")
@click.argument("table_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--lambda", "lam", type=ELEMENT, default=None)
@click.pass_context
def gau_map_verify(ctx, table_file, lam):
    """Check a map file for totality, bijectivity and both identities."""
    lam = resolve_element(ctx, "lambda", lam)
    try:
        table = gaumap.parse_table_text(Path(table_file).read_text())
    except ParseError as exc:
        raise click.UsageError(str(exc))
    problems = gaumap.verify_table(table, lam)
    if not problems:
        click.echo("OK")
        return
    report = {"status": "FAIL", "problems": problems}
    if problems[0]["identity"] not in ("total", "bijective"):
        best, nearest = gaumap.nearest_valid_maps(table, lam)
        report["nearest_valid_maps"] = [
            {"params": [format_element(p) for p in m.params], "differing_cells": cells} for m, cells in nearest
        ]
        report["differing_cells"] = best
    emit(report)
    ctx.exit(1)


# ---------------------------------------------------------------------------

def _spec(ctx, theta, z, r, m):
    theta = resolve_element(ctx, "theta", theta)
    z = resolve_element(ctx, "z", z)
    r = int(setting(ctx, "r", r))
    m = int(setting(ctx, "m", m))
    return rm.RMSpec(theta, z, r, m)


@main.group("rm")
def rm_group():
    """Reed-Muller-type DNA codes."""


def rm_options(f):
    for opt in reversed([
        click.option("--theta", type=ELEMENT, default=None),
        click.option("--z", type=ELEMENT, default=None),
        click.option("--r", type=int, default=None),
        click.option("--m", type=int, default=None),
    ]):
        f = opt(f)
    return f


@rm_group.command("construct")
@rm_options
@click.option("--format", "out_format", default=None)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def rm_construct(ctx, theta, z, r, m, out_format, output):
    """Build the DNA code and export it (fasta, csv, or generator json)."""
    spec = _spec(ctx, theta, z, r, m)
    gmap = resolve_map(ctx)
    out_format = fmt(ctx, out_format)
    sink = io.StringIO()
    if out_format == "json":
        sink.write(rm.rm_generator(spec).to_json(gmap.lam) + "\n")
    else:
        code = rm.rm_dna_code(spec, gmap, guard=guard(ctx))
        if out_format == "fasta":
            dna.export_fasta(code, sink)
        elif out_format == "csv":
            dna.export_csv(code, sink)
        else:
            sink.write(dna.summary_json(code) + "\n")
    if output:
        Path(output).write_text(sink.getvalue())
    else:
        click.echo(sink.getvalue(), nl=False)


def _verify_one(args):
    spec, params, lam, g = args
    gmap = gaumap.build_gau_map(lam, *params)
    return rm.verify(spec, gmap, guard=g).as_dict()


@rm_group.command("verify")
@rm_options
@click.option("--all", "sweep", is_flag=True, help="Sweep every chain theta, admissible z, m <= 3, r <= 2.")
@click.pass_context
def rm_verify(ctx, theta, z, r, m, sweep):
    """Formula (n, M, d_H) next to the enumerated values."""
    gmap = resolve_map(ctx)
    specs = rm.verification_grid() if sweep else [_spec(ctx, theta, z, r, m)]
    jobs = int(setting(ctx, "jobs", ctx.obj["jobs"]))
    work = [(s, gmap.params, gmap.lam, guard(ctx)) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_one, work))
    else:
        results = [_verify_one(w) for w in work]
    emit(results if sweep else results[0])
    closure_failed = any(not (x["reversible"] and x["rc_closed"]) for x in results)
    mismatched = any(not x["match"] for x in results)
    if mismatched and not strict(ctx):
        click.echo(f"warning: {sum(not x['match'] for x in results)} formula/oracle mismatches", err=True)
    if closure_failed or (mismatched and strict(ctx)):
        ctx.exit(1)


# ---------------------------------------------------------------------------

@main.command("dual")
@click.argument("generator_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--check/--no-check", default=True, help="Compare against the brute-force annihilator.")
@click.pass_context
def dual_cmd(ctx, generator_file, check):
    """Closed-form dual of a standard-form generator (JSON in, JSON out)."""
    G = codes.GeneratorMatrix.from_json(Path(generator_file).read_text())
    H = codes.dual_generator(G)
    out = {
        "dual": json.loads(H.to_json()),
        "dual_profile": list(codes.dual_profile(G.theta, G.profile, G.n)),
    }
    if check:
        C = codes.LinearCode(G, guard=guard(ctx))
        oracle = codes.dual_brute_force(C)
        D = codes.LinearCode(H, guard=guard(ctx))
        out["oracle_size"] = len(oracle)
        out["closed_form_size"] = len(D)
        out["match"] = len(D) == len(oracle) and bool(D.contains(oracle).all())
    emit(out)
    if check and not out["match"]:
        if strict(ctx):
            ctx.exit(1)
        click.echo("warning: closed-form dual differs from the oracle", err=True)


@main.group("selfdual")
def selfdual():
    """Self-dual constructions."""


@selfdual.command("trivial")
@click.option("--theta", type=ELEMENT, default=None)
@click.option("--n", type=int, required=True)
@click.pass_context
def selfdual_trivial(ctx, theta, n):
    """The constant-word candidate and its brute-force verdict."""
    theta = resolve_element(ctx, "theta", theta)
    code, verdict = codes.trivial_self_dual_candidate(theta, n)
    emit({"theta": format_element(theta), "n": n, "M": len(code), "required_M": 4 ** n, "self_dual": verdict})


@selfdual.command("circulant")
@click.option("--theta", type=ELEMENT, default=None)
@click.option("--n", type=int, required=True)
@click.pass_context
def selfdual_circulant(ctx, theta, n):
    """Search (u I | circ(a)) over unit u and unit tuples a."""
    theta = resolve_element(ctx, "theta", theta)
    gmap = resolve_map(ctx)
    found = codes.circulant_search(theta, n, gmap)
    emit([
        {"rows": [[format_element(x) for x in row] for row in res.generator.rows()],
         "self_dual": res.self_dual, "reverse_closed": res.reverse_closed, "rc_closed": res.rc_closed}
        for res in found
    ])


# ---------------------------------------------------------------------------

@main.command("bounds")
@click.option("--n", type=int, default=None)
@click.option("--M", "size", type=int, default=None)
@click.option("--d", type=int, default=None)
@click.option("--code", "code_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Generator JSON; (n, M, d) are computed from the code.")
@click.option("--format", "out_format", default=None)
@click.pass_context
def bounds_cmd(ctx, n, size, d, code_file, out_format):
    """All four bounds for (n, M, d) or for a code."""
    if code_file:
        G = codes.GeneratorMatrix.from_json(Path(code_file).read_text())
        n, size, d = codes.LinearCode(G, guard=guard(ctx)).params(resolve_map(ctx))
    elif None in (n, size, d):
        raise click.UsageError("give --n, --M and --d, or --code")
    reports = bd.all_bounds(n, size, d)
    if fmt(ctx, out_format) == "table":
        click.echo(bd.format_table(reports), nl=False)
    else:
        emit([r.as_dict() for r in reports])
    if any(r.verdict == bd.VIOLATED for r in reports):
        ctx.exit(1)


if __name__ == "__main__":
    main()
