"""Command-line interface: train, check, scan, families, list-bounds.

Exit codes encode the scientific outcome so shell pipelines can orchestrate
sweeps: 0 means a counterexample was found (train, check, scan) or the family
check passed (families); 1 is the opposite outcome; 2 an execution error; 64 a
usage error. Every flag can also be set through an environment variable with
the LAPCEX_ prefix (e.g. LAPCEX_TRAIN_SEED).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import bounds as bounds_mod
from . import search as search_mod
from .graphs import (Graph6ParseError, generate_star, generate_windmill,
                     to_dot, to_graph6)
from .trainer import TrainConfig, train

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_ERROR = 2
EXIT_USAGE = 64


def _parse_bound(ctx, param, value):
    if value is None:
        return None
    try:
        return [bounds_mod.get_bound(int(b)).id for b in value] if isinstance(value, tuple) \
            else bounds_mod.get_bound(int(value)).id
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_neurons(ctx, param, value):
    try:
        sizes = tuple(int(part) for part in str(value).split(",") if part.strip())
    except ValueError:
        raise click.UsageError(f"--neurons expects a comma list of widths, got {value!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise click.UsageError(f"--neurons widths must be positive, got {value!r}")
    return sizes


@click.group()
def cli():
    """Counterexample search for conjectured Laplacian spectral-radius bounds."""


@cli.command("train")
@click.option("--bound", required=True, callback=_parse_bound,
              help="Bound id (1..68) whose reward mu - rhs is maximised.")
@click.option("--n", default=20, show_default=True, help="Vertices per constructed graph.")
@click.option("--batch-size", default=200, show_default=True)
@click.option("--num-generations", default=1000, show_default=True)
@click.option("--percent-learn", default=90.0, show_default=True)
@click.option("--percent-survive", default=97.5, show_default=True)
@click.option("--neurons", default="72,12", show_default=True, callback=_parse_neurons,
              help="Hidden layer widths, comma separated.")
@click.option("--learning-rate", default=0.003, show_default=True)
@click.option("--act-rndness-init", default=0.005, show_default=True)
@click.option("--act-rndness-wait", default=10, show_default=True)
@click.option("--act-rndness-mult", default=1.1, show_default=True)
@click.option("--act-rndness-max", default=0.025, show_default=True)
@click.option("--verbose/--quiet", default=True, show_default=True)
@click.option("--output-best-graph-rate", default=25, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--workers", default=1, show_default=True)
@click.option("--out-dir", default="runs", show_default=True, type=click.Path())
@click.option("--figures/--no-figures", default=True, show_default=True,
              help="Render reward-evolution and best-graph PNGs beside the CSV.")
def cmd_train(bound, n, batch_size, num_generations, percent_learn, percent_survive,
              neurons, learning_rate, act_rndness_init, act_rndness_wait,
              act_rndness_mult, act_rndness_max, verbose, output_best_graph_rate,
              seed, workers, out_dir, figures):
    """Run the cross-entropy construction loop against one bound."""
    spec = bounds_mod.get_bound(bound)
    try:
        config = TrainConfig(
            compute_reward=bounds_mod.reward_fn(spec),
            n=n, batch_size=batch_size, num_generations=num_generations,
            percent_learn=percent_learn, percent_survive=percent_survive,
            neurons=neurons, learning_rate=learning_rate,
            act_rndness_init=act_rndness_init, act_rndness_wait=act_rndness_wait,
            act_rndness_mult=act_rndness_mult, act_rndness_max=act_rndness_max,
            verbose=verbose, output_best_graph_rate=output_best_graph_rate,
            seed=seed, workers=workers,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))

    out = Path(out_dir)
    result = train(config, out_dir=out)
    if result.interrupted:
        click.echo("interrupted; partial results written", err=True)
    if result.best_graph is not None:
        g6 = to_graph6(result.best_graph)
        (out / "best.g6").write_bytes(g6 + b"\n")
        (out / "best.dot").write_text(to_dot(result.best_graph))
        if figures:
            from . import report
            report.save_reward_evolution(
                result.stats, out / "reward_evolution.png",
                title=f"bound {spec.id}: {spec.expression}")
            report.save_graph_drawing(
                result.best_graph, out / "best.png",
                title=f"best reward {result.best_reward:.4f}")
        click.echo(f"best reward {result.best_reward:.6f}  graph {g6.decode()}")
    else:
        click.echo("no graphs generated")
    return EXIT_FOUND if result.best_graph is not None and result.best_reward > 0 \
        else EXIT_NOT_FOUND


@cli.command("check")
@click.argument("graph6")
@click.option("--bound", multiple=True, callback=_parse_bound,
              help="Bound ids to evaluate (default: all 68).")
def cmd_check(graph6, bound):
    """Evaluate bounds on one graph6 graph; exit 0 iff some bound is violated."""
    try:
        rows = search_mod.check_single(graph6, bound or None)
    except (Graph6ParseError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"{'bound':>5s} {'family':>10s} {'status':>20s} "
               f"{'mu':>10s} {'rhs':>10s} {'reward':>11s}")
    violated = False
    for row in rows:
        mark = ""
        if row["reward"] > search_mod.REWARD_TOL:
            violated = True
            mark = "  VIOLATED"
        click.echo(f"{row['bound_id']:5d} {row['family']:>10s} {row['status']:>20s} "
                   f"{row['mu']:10.5f} {row['rhs']:10.5f} {row['reward']:11.6f}{mark}")
    return EXIT_FOUND if violated else EXIT_NOT_FOUND


@cli.command("scan")
@click.option("--n", type=int, default=None, help="Order for the built-in enumerator.")
@click.option("--max-degree", type=int, default=None,
              help="Degree cap for the built-in enumerator (e.g. 4 for subquartic).")
@click.option("--stdin", "use_stdin", is_flag=True,
              help="Read a newline-delimited graph6 stream from standard input.")
@click.option("--bound", multiple=True, callback=_parse_bound,
              help="Bound ids to check (default: all 68).")
@click.option("--lenient", is_flag=True, help="Skip malformed stream lines instead of aborting.")
@click.option("--out-dir", default=None, type=click.Path(),
              help="Write violations.csv and scan_summary.png here.")
def cmd_scan(n, max_degree, use_stdin, bound, lenient, out_dir):
    """Exhaustively check bounds over a graph family; exit 0 iff violations found."""
    if use_stdin == (n is not None):
        raise click.UsageError("choose exactly one input: --n (built-in enumerator) or --stdin")
    report_fh = None
    out = None
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        report_fh = open(out / "violations.csv", "w", newline="")
    try:
        if use_stdin:
            res = search_mod.stream_check(sys.stdin, bound or None,
                                          strict=not lenient, report_file=report_fh)
        else:
            res = search_mod.exhaustive_check(bound or None, n, max_degree,
                                              report_file=report_fh)
    except (Graph6ParseError, ValueError) as exc:
        raise click.ClickException(str(exc))
    finally:
        if report_fh is not None:
            report_fh.close()
    click.echo(f"scanned {res.scanned} graphs"
               + (f", skipped {res.skipped}" if res.skipped else "")
               + f"; {len(res.reports)} violations across {len(res.violated_bounds)} bounds")
    for r in res.reports[:20]:
        click.echo(f"  bound {r.bound_id}: {r.g6}  mu={r.mu:.5f} rhs={r.rhs:.5f} "
                   f"reward={r.reward:.6f}")
    if len(res.reports) > 20:
        click.echo(f"  ... {len(res.reports) - 20} more")
    if out is not None and res.max_reward:
        from . import report
        report.save_scan_summary(res.max_reward, out / "scan_summary.png",
                                 title="max reward per bound over scanned family")
    return EXIT_FOUND if res.reports else EXIT_NOT_FOUND


@cli.command("families")
@click.option("--stars", default=50, show_default=True,
              help="Check stars on 2..N vertices.")
@click.option("--windmills", default=24, show_default=True,
              help="Check windmills with 1..K triangles.")
@click.option("--bound", multiple=True, callback=_parse_bound,
              help="Bound ids to check (default: all 68).")
def cmd_families(stars, windmills, bound):
    """Verify bounds on stars and windmills; exit 0 iff every check passes."""
    ids = bounds_mod.resolve_bound_ids(bound or None)
    specs = [bounds_mod.get_bound(b) for b in ids]
    graphs = [generate_star(n) for n in range(2, stars + 1)]
    graphs += [generate_windmill(k) for k in range(1, windmills + 1)]
    worst = -float("inf")
    violations = 0
    for g in graphs:
        mu, rhs = search_mod.evaluate_chunk(g.n, [g.rows], specs)
        rewards = mu[0] - rhs[:, 0]
        worst = max(worst, float(rewards.max()))
        for s, r in enumerate(rewards):
            if r > search_mod.REWARD_TOL:
                violations += 1
                click.echo(f"VIOLATION bound {specs[s].id} on {to_graph6(g).decode()} "
                           f"(n={g.n}): reward {r:.6f}")
    click.echo(f"checked {len(graphs)} graphs x {len(specs)} bounds; "
               f"worst reward {worst:.3e}; {violations} violations")
    return EXIT_FOUND if violations == 0 else EXIT_NOT_FOUND


@cli.command("list-bounds")
def cmd_list_bounds():
    """Print the table of all 68 conjectured bounds."""
    click.echo(f"{'id':>3s} {'family':>10s} {'status':>20s}  rhs")
    for spec in bounds_mod.registry():
        click.echo(f"{spec.id:3d} {spec.family:>10s} {spec.status:>20s}  {spec.expression}")
    return EXIT_FOUND


def main(argv: list[str] | None = None) -> int:
    """Dispatch with scientific exit codes; see module docstring."""
    try:
        rv = cli.main(args=argv, standalone_mode=False, auto_envvar_prefix="LAPCEX")
        return int(rv) if isinstance(rv, int) else EXIT_FOUND
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return 130
    except KeyboardInterrupt:
        return 130


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
