"""Command-line front end: ``cdlattice build|cd|verify|measure-table``.

Every budget flag can also be set through an environment variable with
the ``CDL_`` prefix (``CDL_MAX_ORDER``, ``CDL_MAX_SUBGROUPS``,
``CDL_TIME_LIMIT``, ``CDL_WORKERS``).
"""
from __future__ import annotations

import json
import logging
import signal
import sys
import time
from contextlib import contextmanager
from typing import Any, Iterator

import click

from . import oracle
from .cd import CDLattice, cd_lattice
from .corpus import SUITES, run_suite
from .group import GroupError, GroupTable
from .groupspec import GroupSpec, ParseError, build_group, parse_spec
from .presentation import BoundExceeded, PresentationError
from .subgroups import ResourceLimitError, all_subgroups

__all__ = ["main", "parse_spec", "GroupSpec", "ParseError", "lattice_to_dict", "lattice_to_dot"]

EXIT_FAIL, EXIT_RESOURCE = 1, 3


class TimeLimitExceeded(RuntimeError):
    pass


@contextmanager
def deadline(seconds: float) -> Iterator[None]:
    """Raise :class:`TimeLimitExceeded` after ``seconds`` (0 disables; main thread only)."""
    if seconds <= 0 or not hasattr(signal, "SIGALRM"):
        yield
        return

    def _alarm(signum, frame):
        raise TimeLimitExceeded(f"time limit of {seconds:g}s exceeded")

    old = signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def lattice_to_dict(spec: str, lat: CDLattice, elements: bool = False) -> dict[str, Any]:
    g = lat.group
    members = []
    for i, h in enumerate(lat.members):
        rec: dict[str, Any] = {
            "id": i, "order": h.order, "measure": lat.m_star,
            "normal": bool(g.is_normal(h)), "abelian": bool(lat.table.is_abelian(lat.table.subs.index(h))),
        }
        if elements:
            rec["elements"] = [int(x) for x in h.elements(g.order)]
        members.append(rec)
    return {
        "spec": spec,
        "group_order": g.order,
        "center_order": g.center.order,
        "m_star": lat.m_star,
        "shape": {"tag": lat.shape.tag, "param": lat.shape.param},
        "members": members,
        "hasse": [[lo, hi] for lo, hi in lat.hasse],
        "minimum": lat.minimum,
        "maximum": lat.maximum,
    }


def lattice_to_dot(lat: CDLattice, title: str = "CD") -> str:
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, h in enumerate(lat.members):
        lines.append(f'  n{i} [label="{h.order}/{lat.m_star}"];')
    for lo, hi in lat.hasse:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    if path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _budget_options(f):
    f = click.option("--time-limit", type=float, default=0.0, envvar="CDL_TIME_LIMIT", show_default=True,
                     show_envvar=True, help="Wall-clock limit in seconds (0 = none).")(f)
    f = click.option("--max-subgroups", type=int, default=500_000, envvar="CDL_MAX_SUBGROUPS",
                     show_default=True, show_envvar=True, help="Abort enumeration beyond this many subgroups.")(f)
    f = click.option("--max-order", type=int, default=20_000, envvar="CDL_MAX_ORDER", show_default=True,
                     show_envvar=True, help="Refuse groups larger than this.")(f)
    f = click.option("--workers", type=int, default=1, envvar="CDL_WORKERS", show_default=True,
                     show_envvar=True, help="Threads used for subgroup enumeration.")(f)
    return f


class _SpecType(click.ParamType):
    name = "SPEC"

    def convert(self, value, param, ctx):
        if isinstance(value, GroupSpec):
            return value
        try:
            return parse_spec(value)
        except ParseError as e:
            self.fail(str(e), param, ctx)


SPEC = _SpecType()


@contextmanager
def _guarded() -> Iterator[None]:
    """Map resource and input errors to a message and a nonzero exit."""
    try:
        yield
    except (ResourceLimitError, BoundExceeded, TimeLimitExceeded) as e:
        click.echo(f"resource limit: {e}", err=True)
        sys.exit(EXIT_RESOURCE)
    except (GroupError, PresentationError, FileNotFoundError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_FAIL)


def _build(spec: GroupSpec, max_order: int) -> GroupTable:
    t = time.perf_counter()
    g = build_group(spec, max_order)
    logging.getLogger(__name__).info("built %s: order %d in %.2fs", spec, g.order, time.perf_counter() - t)
    return g


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
def main(verbose: int) -> None:
    """Chermak-Delgado lattices of finite groups by exhaustive enumeration."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level, format="%(asctime)s %(name)s: %(message)s", stream=sys.stderr)


@main.command()
@click.argument("spec", type=SPEC)
@_budget_options
def build(spec: GroupSpec, max_order: int, workers: int, max_subgroups: int, time_limit: float) -> None:
    """Construct a group and print its basic invariants."""
    with _guarded(), deadline(time_limit):
        g = _build(spec, max_order)
        pr = g.predicates
        click.echo(f"spec: {spec}")
        click.echo(f"order: {g.order}")
        click.echo(f"center order: {g.center.order}")
        click.echo(f"derived subgroup order: {g.derived_subgroup.order}")
        click.echo(f"abelian: {pr.is_abelian}")
        click.echo(f"nilpotency class: {pr.nilpotency_class if pr.nilpotency_class is not None else 'not nilpotent'}")
        click.echo(f"exponent: {pr.exponent}")
        click.echo(f"maximal class: {pr.is_maximal_class}")
        click.echo(f"metabelian: {pr.is_metabelian}")


@main.command()
@click.argument("spec", type=SPEC)
@click.option("--json", "json_path", type=str, default=None, help="Write the lattice as JSON ('-' = stdout).")
@click.option("--dot", "dot_path", type=str, default=None, help="Write the Hasse diagram in DOT format.")
@click.option("--elements", is_flag=True, help="Include member element lists in the JSON output.")
@_budget_options
def cd(spec: GroupSpec, json_path: str | None, dot_path: str | None, elements: bool,
       max_order: int, workers: int, max_subgroups: int, time_limit: float) -> None:
    """Compute the CD lattice of SPEC."""
    with _guarded(), deadline(time_limit):
        g = _build(spec, max_order)
        subs = all_subgroups(g, workers=workers, max_subgroups=max_subgroups)
        lat = cd_lattice(g, subs)
    quiet = json_path == "-" or dot_path == "-"
    if not quiet:
        click.echo(f"group {spec}: order {g.order}, |Z| = {g.center.order}, {len(subs)} subgroups")
        click.echo(f"m* = {lat.m_star}")
        click.echo(f"shape: {lat.shape}")
        click.echo(f"members: {len(lat)}")
        click.echo(f"{'id':>4} {'order':>7} {'measure':>10} {'normal':>7} {'abelian':>8}")
        for i, h in enumerate(lat.members):
            ab = lat.table.is_abelian(subs.index(h))
            click.echo(f"{i:>4} {h.order:>7} {lat.m_star:>10} {str(g.is_normal(h)):>7} {str(ab):>8}")
    if json_path:
        _write(json_path, json.dumps(lattice_to_dict(str(spec), lat, elements), indent=2) + "\n")
    if dot_path:
        _write(dot_path, lattice_to_dot(lat, str(spec)))


@main.command("measure-table")
@click.argument("spec", type=SPEC)
@_budget_options
def measure_table(spec: GroupSpec, max_order: int, workers: int, max_subgroups: int, time_limit: float) -> None:
    """Print |H|, |C(H)| and the measure of every subgroup H of SPEC."""
    with _guarded(), deadline(time_limit):
        g = _build(spec, max_order)
        subs = all_subgroups(g, workers=workers, max_subgroups=max_subgroups)
        lat = cd_lattice(g, subs)
    t = lat.table
    click.echo(f"{'id':>6} {'order':>7} {'centralizer':>11} {'measure':>10} {'CD':>3}")
    for i, h in enumerate(subs):
        star = "*" if h in lat else ""
        click.echo(f"{i:>6} {h.order:>7} {int(t.centralizer_orders[i]):>11} {int(t.measures[i]):>10} {star:>3}")
    click.echo(f"m* = {lat.m_star}")


@main.command()
@click.argument("suite", type=click.Choice(sorted(SUITES) + ["all"]))
@click.option("--long", "long_", is_flag=True, help="Add the order 5^6 presentation to the corpus.")
@click.option("--max-n", type=int, default=12, show_default=True, help="Largest n in the dicyclic sweep.")
@click.option("--json", "json_path", type=str, default=None, help="Write all reports as JSON.")
@click.option("--quiet", is_flag=True, help="Print only failures and the summary.")
@_budget_options
def verify(suite: str, long_: bool, max_n: int, json_path: str | None, quiet: bool,
           max_order: int, workers: int, max_subgroups: int, time_limit: float) -> None:
    """Run a theorem suite over the corpus; exit status 0 iff nothing fails."""
    oracle.MAX_SUBGROUPS = max_subgroups
    with _guarded(), deadline(time_limit):
        reports = run_suite(suite, long=long_, max_n=max_n, workers=workers)
    for r in reports:
        if not quiet or r.failed:
            click.echo(r.line())
    summary = oracle.summarize(reports)
    click.echo(f"summary: {summary[oracle.PASS]} pass, {summary[oracle.FAIL]} fail, "
               f"{summary[oracle.NA]} not-applicable")
    if json_path:
        _write(json_path, json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    sys.exit(EXIT_FAIL if summary[oracle.FAIL] else 0)


if __name__ == "__main__":
    main()
