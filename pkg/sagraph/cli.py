"""Command-line interface for sa-graph."""

import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

import click
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from sagraph import __version__
from sagraph.boundary import bundle_distance_bounds, completeness_verdict
from sagraph.boundary.distance import FRONTIER_ASSUMPTION
from sagraph.config import SolverConfig, load_config
from sagraph.covering import covering_report, triangle_covering
from sagraph.criteria import (
    golenia_check,
    golenia_report,
    spectral_stability_probe,
    theorem1_check,
    theorem2_check,
    theorem3_check,
)
from sagraph.errors import InputError, NumericalError
from sagraph.families import family_q, family_spec, generate as generate_family
from sagraph.graph import (
    bundle_digest,
    bundle_to_dict,
    canonical_digest,
    covering_to_dict,
    read_bundle,
    read_covering,
    require_valid,
    validate as validate_bundle,
    write_bundle,
)
from sagraph.metrics import (
    bundle_lengths,
    check_intrinsic,
    check_strongly_intrinsic,
    distances_from,
    sigma_q,
)
from sagraph.models import (
    CommandResult,
    DistanceBounds,
    GraphBundle,
    RunManifest,
    SeriesClass,
    Verdict,
    VertexId,
)
from sagraph.operators import assemble, spectrum as compute_spectrum
from sagraph.verification import run_suite

console = Console(stderr=True)
logger = logging.getLogger("sagraph")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_QUALIFIED = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4

VERDICT_EXIT = {
    Verdict.PASS: EXIT_OK,
    Verdict.FAIL: EXIT_FAIL,
    Verdict.INCONCLUSIVE: EXIT_QUALIFIED,
    Verdict.VERIFIED_UP_TO_TRUNCATION: EXIT_QUALIFIED,
}

FAMILY_NAMES = ("ex51", "ex52", "path")

family_options = [
    click.option(
        "--family",
        "-f",
        "source",
        required=True,
        help="Built-in family (ex51, ex52, path) or a graph JSON file",
    ),
    click.option("--alpha", type=float, default=None, help="ex51 weight exponent"),
    click.option("--beta", type=float, default=None, help="ex51 measure exponent"),
    click.option("--rows", type=int, default=50, show_default=True, help="Truncation rows"),
    click.option(
        "--potential",
        type=click.Choice(["family", "zero", "opposite"]),
        default="family",
        show_default=True,
        help="W of a generated truncation",
    ),
]


def with_family_options(func):
    for option in reversed(family_options):
        func = option(func)
    return func


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _load(
    ctx: click.Context,
    source: str,
    alpha: Optional[float],
    beta: Optional[float],
    rows: int,
    potential: str,
) -> GraphBundle:
    """Bundle from a family name or a graph file; records the input digest."""
    digests = ctx.obj["digests"]
    if source in FAMILY_NAMES:
        spec = family_spec(source, alpha, beta)
        digests["family"] = canonical_digest(spec.model_dump(mode="json"))
        bundle = generate_family(spec, rows, potential)
        logger.debug("generated %s with %d rows, %d vertices", source, rows, bundle.graph.size)
        return bundle
    path = Path(source)
    if not path.exists():
        raise InputError(
            f"{source} is neither a built-in family ({', '.join(FAMILY_NAMES)}) nor a file"
        )
    bundle = require_valid(read_bundle(path))
    digests["graph"] = bundle_digest(bundle)
    logger.debug("read %s: %d vertices, %d edges", path, bundle.graph.size, bundle.graph.edge_count)
    return bundle


def _manifest(ctx: click.Context) -> RunManifest:
    obj = ctx.obj
    return RunManifest(
        command=ctx.info_name,
        arguments={key: value for key, value in ctx.params.items() if value is not None},
        input_digests=dict(obj["digests"]),
        tool_version=__version__,
        seed=obj["config"].seed,
        timestamp=None
        if obj["no_timestamp"]
        else datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def _emit(ctx: click.Context, result: Any) -> None:
    """Write a result to stdout as JSON, with the run manifest attached."""
    manifest = _manifest(ctx)
    if isinstance(result, BaseModel) and "manifest" in type(result).model_fields:
        result.manifest = manifest
    else:
        result = CommandResult(result=result, manifest=manifest)
    logger.debug("%s done, inputs %s", ctx.info_name, sorted(manifest.input_digests))
    click.echo(result.model_dump_json(indent=2, by_alias=True))


def _find_vertex(bundle: GraphBundle, text: str) -> VertexId:
    """A vertex by label, or by 'row,index' on layered graphs."""
    for x in bundle.graph.vertex_ids:
        if x.label == text:
            return x
    if "," in text:
        try:
            row, index = (int(part) for part in text.split(","))
        except ValueError:
            raise InputError(f"cannot parse vertex {text!r}") from None
        x = VertexId.layered(row, index)
        bundle.graph.index_of(x)
        return x
    return VertexId(label=text)


def _config(ctx: click.Context) -> SolverConfig:
    return ctx.obj["config"]


@click.group()
@click.version_option(version=__version__, prog_name="sa-graph")
@click.option("--tolerance", type=float, default=None, help="Slack for intrinsic checks")
@click.option("--dense-limit", type=int, default=None, help="Largest matrix solved densely")
@click.option("--seed", type=int, default=None, help="Seed for randomized work")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True),
    default=None,
    help="YAML solver configuration",
)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.option("--no-timestamp", is_flag=True, help="Omit the timestamp from run manifests")
@click.pass_context
def cli(
    ctx: click.Context,
    tolerance: Optional[float],
    dense_limit: Optional[int],
    seed: Optional[int],
    config_path: Optional[str],
    verbose: bool,
    no_timestamp: bool,
):
    """sa-graph - essential self-adjointness criteria for magnetic Schroedinger operators on graphs.

    Results are written to stdout as JSON; summaries and logs go to stderr.
    """
    _setup_logging(verbose)
    ctx.obj = {
        "config": load_config(
            config_path, tolerance=tolerance, dense_limit=dense_limit, seed=seed
        ),
        "no_timestamp": no_timestamp,
        "digests": {},
    }


@cli.command()
@click.option(
    "--family", "-f", "kind", type=click.Choice(FAMILY_NAMES), required=True, help="Family"
)
@click.option("--alpha", type=float, default=None, help="ex51 weight exponent")
@click.option("--beta", type=float, default=None, help="ex51 measure exponent")
@click.option("--rows", type=int, default=50, show_default=True)
@click.option(
    "--potential",
    type=click.Choice(["family", "zero", "opposite"]),
    default="family",
    show_default=True,
)
@click.option("--out", "-o", type=click.Path(), default=None, help="Graph file to write")
@click.pass_context
def generate(ctx, kind, alpha, beta, rows, potential, out):
    """Generate a truncation of a built-in family."""
    bundle = _load(ctx, kind, alpha, beta, rows, potential)
    if out:
        write_bundle(bundle, out)
        console.print(
            f"[green]Wrote[/green] {bundle.graph.size} vertices, {bundle.graph.edge_count} edges "
            f"to [cyan]{out}[/cyan]"
        )
        _emit(ctx, {"path": str(out), "digest": bundle_digest(bundle)})
    else:
        _emit(ctx, bundle_to_dict(bundle))
    return EXIT_OK


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.pass_context
def validate(ctx, graph_file):
    """Check the structural axioms of a graph file."""
    bundle = read_bundle(graph_file)
    ctx.obj["digests"]["graph"] = bundle_digest(bundle)
    report = validate_bundle(bundle)
    if report.valid:
        console.print("[green]valid[/green]")
    else:
        for violation in report.violations:
            console.print(f"[red]-[/red] {violation}")
    _emit(ctx, report)
    return EXIT_OK if report.valid else EXIT_INPUT


@cli.command()
@with_family_options
@click.option(
    "--source-vertex", "--from", "start", default=None, help="Base vertex (label or row,index)"
)
@click.option(
    "--lengths",
    type=click.Choice(["sigma", "sigma_q"]),
    default="sigma",
    show_default=True,
    help="sigma_q uses the family's q",
)
@click.pass_context
def metric(ctx, source, alpha, beta, rows, potential, start, lengths):
    """Path-metric distances and intrinsic checks."""
    config = _config(ctx)
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    graph = bundle.graph
    sigma = bundle_lengths(bundle)
    if lengths == "sigma_q":
        q = family_q(bundle.family, graph) if bundle.family is not None else None
        if q is None:
            raise InputError("sigma_q needs a family with q")
        sigma = sigma_q(graph, sigma, q)

    x0 = _find_vertex(bundle, start) if start else graph.vertex_ids[0]
    distances = distances_from(graph, sigma, [graph.index_of(x0)])
    intrinsic = check_intrinsic(graph, sigma, config)
    strong = check_strongly_intrinsic(graph, sigma, config)

    table = Table(title=f"{lengths} from {x0}")
    table.add_column("Check", style="cyan")
    table.add_column("Max ratio", style="green")
    table.add_column("Passes")
    table.add_row("intrinsic", f"{intrinsic.max_ratio:.6g}", str(intrinsic.passes))
    table.add_row("strongly intrinsic", f"{strong.max_ratio:.6g}", str(strong.passes))
    console.print(table)

    _emit(
        ctx,
        {
            "source": x0.label,
            "lengths": lengths,
            "distances": {x.label: float(d) for x, d in zip(graph.vertex_ids, distances)},
            "intrinsic": intrinsic,
            "strongly_intrinsic": strong,
        },
    )
    return EXIT_OK


@cli.command()
@with_family_options
@click.option("--k", "count", type=int, default=None, help="Eigenvalues from the sparse solver")
@click.option("--ambient", is_flag=True, help="Use the infinite family's degrees on truncations")
@click.option(
    "--symmetrized-dump",
    type=click.Path(),
    default=None,
    help="Write S as 'row col re im' triplets",
)
@click.pass_context
def spectrum(ctx, source, alpha, beta, rows, potential, count, ambient, symmetrized_dump):
    """Eigenvalues of H in ascending order."""
    config = _config(ctx)
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    op = assemble(bundle, ambient=ambient)
    if symmetrized_dump:
        S = op.S.tocoo()
        lines = [
            f"{i} {j} {value.real!r} {value.imag!r}"
            for i, j, value in zip(S.row.tolist(), S.col.tolist(), S.data.tolist())
        ]
        Path(symmetrized_dump).write_text("\n".join(lines) + "\n")
    result = compute_spectrum(op, config, k=count)
    console.print(
        f"lowest eigenvalue [bold]{result.lowest:.12g}[/bold] "
        f"({result.solver}, residual {result.residual:.2e})"
    )
    _emit(ctx, result)
    return EXIT_OK


@cli.command()
@with_family_options
@click.option("--vertex", "vertex", required=True, help="Vertex label or row,index")
@click.pass_context
def boundary(ctx, source, alpha, beta, rows, potential, vertex):
    """Bounds on the distance from a vertex to the Cauchy boundary."""
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    x = _find_vertex(bundle, vertex)
    i = bundle.graph.index_of(x)
    lower, upper = bundle_distance_bounds(bundle, bundle_lengths(bundle), "sigma")
    verdict = completeness_verdict(bundle.family if bundle.sigma is None else None, "sigma")
    bounds = DistanceBounds(
        vertex=x.label,
        lower=float(lower[i]),
        upper=float(upper[i]),
        assumptions=[FRONTIER_ASSUMPTION] if bundle.frontier else [],
    )
    console.print(
        Panel(f"D({x}) in [{bounds.lower:.6g}, {bounds.upper:.6g}]  ({verdict.verdict.value})")
    )
    _emit(ctx, bounds)
    return EXIT_OK


@cli.command()
@with_family_options
@click.option("--cover", type=click.Path(exists=True), default=None, help="Covering JSON file")
@click.pass_context
def covering(ctx, source, alpha, beta, rows, potential, cover):
    """Cell eigenvalues p_l and the effective potential W_e."""
    config = _config(ctx)
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    if cover:
        good = read_covering(cover, bundle.graph)
    else:
        good, phase = triangle_covering(bundle)
        if bundle.theta.values is None:
            bundle = bundle.with_theta(phase)
    ctx.obj["digests"]["covering"] = canonical_digest(covering_to_dict(good))
    report = covering_report(bundle.graph, bundle.theta, good, config)

    table = Table(title=f"Covering of degree {report.m}")
    table.add_column("Cell", style="dim")
    table.add_column("p_l", style="green")
    table.add_column("inf b", style="cyan")
    for cell in report.cells[:20]:
        table.add_row(str(cell.index), f"{cell.p:.6g}", f"{cell.inf_b:.6g}")
    console.print(table)
    _emit(ctx, report)
    return EXIT_OK


def _parse_C(text: str) -> Optional[float]:
    if text == "search":
        return None
    try:
        return float(text)
    except ValueError:
        raise click.BadParameter("C must be a number or 'search'") from None


@cli.command()
@click.option(
    "--criterion",
    type=click.Choice(["thm1", "thm2", "thm3", "golenia"]),
    required=True,
)
@with_family_options
@click.option("--C", "C", default="search", show_default=True, help="Constant C or 'search'")
@click.option(
    "--cover", type=click.Path(exists=True), default=None, help="Covering JSON file (thm2)"
)
@click.option("--delta", type=float, default=1.0, show_default=True, help="delta (golenia)")
@click.option("--lambda", "lam", type=float, default=None, help="lambda (golenia)")
@click.pass_context
def check(ctx, criterion, source, alpha, beta, rows, potential, C, cover, delta, lam):
    """Check a self-adjointness criterion."""
    config = _config(ctx)
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    constant = _parse_C(C)

    if criterion == "thm1":
        report = theorem1_check(bundle, C=constant, config=config)
    elif criterion == "thm2":
        good = read_covering(cover, bundle.graph) if cover else None
        if good is not None:
            ctx.obj["digests"]["covering"] = canonical_digest(covering_to_dict(good))
        report = theorem2_check(bundle, cover=good, C=constant, config=config)
    elif criterion == "thm3":
        report = theorem3_check(bundle, config=config)
    else:
        report = golenia_report(bundle, delta=delta, lam=lam, config=config)

    style = {"Pass": "green", "Fail": "red"}.get(report.verdict.value, "yellow")
    summary = [f"[bold {style}]{report.verdict.value}[/bold {style}]"]
    if report.certificate:
        summary.append(f"certificate: {report.certificate}")
    summary.extend(f"{key} = {value}" for key, value in report.constants.items())
    console.print(Panel("\n".join(summary), title=report.criterion.value))
    _emit(ctx, report)
    return VERDICT_EXIT[report.verdict]


@cli.command()
@with_family_options
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--lambda", "lam", type=float, default=None, help="Default: 0, shifted if needed")
@click.option("--n-max", type=int, default=None, help="Path length")
@click.pass_context
def golenia(ctx, source, alpha, beta, rows, potential, delta, lam, n_max):
    """a_n and partial sums along the spine."""
    config = _config(ctx)
    bundle = _load(ctx, source, alpha, beta, rows, potential)
    trace = golenia_check(bundle, delta=delta, lam=lam, n_max=n_max, config=config)
    console.print(
        f"{trace.classification.value} (ratio {trace.ratio_estimate}, Raabe {trace.raabe_estimate})"
    )
    _emit(ctx, trace)
    return {
        SeriesClass.DIVERGES: EXIT_OK,
        SeriesClass.CONVERGES: EXIT_FAIL,
        SeriesClass.INCONCLUSIVE: EXIT_QUALIFIED,
    }[trace.classification]


@cli.command()
@click.option(
    "--suite",
    type=click.Choice(["all", "lemma21", "prop41", "cutoffs", "covering-bound", "operator"]),
    default="all",
    show_default=True,
)
@click.option("--instances", type=int, default=500, show_default=True)
@click.pass_context
def verify(ctx, suite, instances):
    """Run randomized identity and inequality suites."""
    config = _config(ctx)
    summary = run_suite(suite, instances=instances, seed=config.seed, config=config)
    table = Table(title=f"Suite {suite}")
    table.add_column("Passed", style="green")
    table.add_column("Failed", style="red")
    table.add_column("Worst rel. error")
    table.add_row(str(summary.passed), str(summary.failed), f"{summary.worst_rel_err:.3e}")
    console.print(table)
    _emit(ctx, summary)
    return EXIT_OK if summary.failed == 0 else EXIT_FAIL


@cli.command()
@click.option("--family", "-f", "kind", type=click.Choice(FAMILY_NAMES), required=True)
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option(
    "--rows", "rows_list", default="5,10,20,40", show_default=True, help="Comma-separated"
)
@click.option(
    "--potential",
    type=click.Choice(["family", "zero", "opposite"]),
    default="family",
    show_default=True,
)
@click.pass_context
def probe(ctx, kind, alpha, beta, rows_list, potential):
    """Heuristic comparison of boundary treatments on nested truncations."""
    config = _config(ctx)
    try:
        rows = [int(part) for part in rows_list.split(",")]
    except ValueError:
        raise click.BadParameter("rows must be comma-separated integers") from None
    spec = family_spec(kind, alpha, beta)
    ctx.obj["digests"]["family"] = canonical_digest(spec.model_dump(mode="json"))
    report = spectral_stability_probe(spec, rows, potential, config)

    table = Table(title="lambda_min (heuristic, not conclusive)")
    table.add_column("Rows", style="dim")
    table.add_column("plain", style="green")
    table.add_column("penalized", style="cyan")
    for n, a, b in zip(report.rows, report.lambda_plain, report.lambda_penalized):
        table.add_row(str(n), f"{a:.10g}", f"{b:.10g}")
    console.print(table)
    _emit(ctx, report)
    return EXIT_OK


def run(argv: Optional[list[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        code = cli.main(args=argv, prog_name="sa-graph", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show(file=sys.stderr)
        return EXIT_INPUT
    except click.Abort:
        console.print("[red]Aborted[/red]")
        return EXIT_INPUT
    except InputError as e:
        console.print(f"[red]Input error:[/red] {e}")
        return EXIT_INPUT
    except NumericalError as e:
        console.print(f"[red]Numerical failure:[/red] {e}")
        return EXIT_NUMERICAL
    return code if isinstance(code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
