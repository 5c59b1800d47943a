"""Command-line front end.

Parse forests from bracket notation, run any library operation, and emit
deterministic text or JSON.  Exit codes: 0 on success, 1 on a domain error
(bad forest text, unknown decoration, non-representable matrix, parameter
misuse), 2 when the conformance suite reports a failing check.
"""

from __future__ import annotations

import json
from typing import Callable

import click

from . import matrices
from .algebra import (
    LinComb,
    TensorLinComb,
    antipode as antipode_op,
    as_lincomb,
    coproduct,
    phi_lambda,
    star as star_op,
    star_lambda,
)
from .forests import (
    DecorationRegistry,
    Forest,
    ForestHopfError,
    enumerate_forests,
    parse_forest,
    stats,
    vertex_table,
)
from .poly import LAMBDA, PolyLambda
from .verify import ALL_CHECKS, SuiteConfig, run_suite

_SYM = "sym"


def _registry_options(f: Callable) -> Callable:
    f = click.option(
        "--omega",
        "omega_list",
        default="a,b,c",
        show_default=True,
        help="Comma-separated operator decorations (may decorate any vertex).",
    )(f)
    f = click.option(
        "--x",
        "x_list",
        default="x,y",
        show_default=True,
        help="Comma-separated leaf-only decorations.",
    )(f)
    return f


def _output_options(f: Callable) -> Callable:
    f = click.option(
        "--ascii",
        "ascii_",
        is_flag=True,
        help='Render the tensor separator as "(x)" instead of "⊗".',
    )(f)
    f = click.option(
        "--output",
        type=click.Choice(["text", "json"]),
        default="text",
        show_default=True,
        help="Output format.",
    )(f)
    return f


def _lambda_option(f: Callable) -> Callable:
    return click.option(
        "--lambda",
        "lam",
        default=_SYM,
        show_default=True,
        help='Deformation parameter: "sym" (symbolic) or an integer.',
    )(f)


def _registry(x_list: str, omega_list: str) -> DecorationRegistry:
    def split(s: str) -> list[str]:
        return [p.strip() for p in s.split(",") if p.strip()]

    return DecorationRegistry(split(x_list), split(omega_list))


def _parse_lambda(lam: str) -> str | int:
    if lam == _SYM:
        return _SYM
    try:
        return int(lam)
    except ValueError:
        raise click.ClickException(
            f'--lambda must be "sym" or an integer, got {lam!r}'
        ) from None


def _require_undeformed(lam: str, operation: str) -> None:
    value = _parse_lambda(lam)
    if value != _SYM and value != 0:
        raise click.ClickException(f"{operation} requires λ=0 (got --lambda {value})")


def _domain(fn: Callable, *args):
    """Run a library call, mapping domain errors to exit code 1."""
    try:
        return fn(*args)
    except ForestHopfError as exc:
        raise click.ClickException(str(exc)) from exc


def _emit_lincomb(lc: LinComb, output: str) -> None:
    if output == "json":
        click.echo(json.dumps(lc.to_json_obj()))
    else:
        click.echo(str(lc))


def _emit_tensor(t: TensorLinComb, output: str, ascii_: bool) -> None:
    if output == "json":
        click.echo(json.dumps(t.to_json_obj()))
    else:
        click.echo(t.text(tensor_symbol="(x)" if ascii_ else "⊗"))


@click.group()
@click.version_option(package_name="foresthopf", prog_name="foresthopf")
def main() -> None:
    """Exact arithmetic on decorated planar rooted forests.

    Forests are written in bracket notation: a decoration name, optionally
    followed by a bracketed forest of children, e.g. ``a[x b[y]]``; trees
    are juxtaposed with spaces and ``1`` denotes the empty forest.
    """


@main.command("coprod")
@click.argument("forest")
@_registry_options
@_lambda_option
@_output_options
def cmd_coprod(forest: str, x_list: str, omega_list: str, lam: str, output: str, ascii_: bool) -> None:
    """Coproduct of FOREST, symbolic in λ by default."""
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, forest, reg)
    t = _domain(coproduct, f)
    value = _parse_lambda(lam)
    if value != _SYM:
        t = t.specialize(value)
    _emit_tensor(t, output, ascii_)


@main.command("antipode")
@click.argument("forest")
@_registry_options
@_lambda_option
@_output_options
def cmd_antipode(forest: str, x_list: str, omega_list: str, lam: str, output: str, ascii_: bool) -> None:
    """Antipode of FOREST (defined at λ=0 only)."""
    _require_undeformed(lam, "antipode")
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, forest, reg)
    _emit_lincomb(_domain(antipode_op, as_lincomb(f)), output)


@main.command("star")
@click.argument("left")
@click.argument("right")
@_registry_options
@_lambda_option
@_output_options
def cmd_star(left: str, right: str, x_list: str, omega_list: str, lam: str, output: str, ascii_: bool) -> None:
    """Shuffle-dual product LEFT ⋆ RIGHT at λ=0."""
    _require_undeformed(lam, "star")
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, left, reg)
    g = _domain(parse_forest, right, reg)
    _emit_lincomb(_domain(star_op, f, g, reg), output)


@main.command("star-lambda")
@click.argument("left")
@click.argument("right")
@_registry_options
@_lambda_option
@_output_options
def cmd_star_lambda(left: str, right: str, x_list: str, omega_list: str, lam: str, output: str, ascii_: bool) -> None:
    """Quasi-shuffle-dual product LEFT ⋆_λ RIGHT, symbolic by default."""
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, left, reg)
    g = _domain(parse_forest, right, reg)
    lc = _domain(star_lambda, f, g, reg)
    value = _parse_lambda(lam)
    if value != _SYM:
        lc = lc.specialize(value)
    _emit_lincomb(lc, output)


@main.command("encode")
@click.argument("forest")
@_registry_options
@_output_options
def cmd_encode(forest: str, x_list: str, omega_list: str, output: str, ascii_: bool) -> None:
    """Matrix encoding of FOREST (rows: decoration, then 0/=/h/r entries)."""
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, forest, reg)
    m = _domain(matrices.encode, f)
    if output == "json":
        click.echo(json.dumps(m.to_json_obj()))
    else:
        click.echo(matrices.matrix_to_text(m))


@main.command("decode")
@click.argument("source", type=click.File("r"), default="-")
@_registry_options
@_output_options
def cmd_decode(source, x_list: str, omega_list: str, output: str, ascii_: bool) -> None:
    """Decode a matrix read from SOURCE (a file, or - for stdin)."""
    reg = _domain(_registry, x_list, omega_list)
    text = source.read()
    m = _domain(matrices.parse_matrix, text, reg)
    f = _domain(matrices.decode, m, reg)
    if output == "json":
        click.echo(json.dumps({"forest": f.text}))
    else:
        click.echo(f.text)


@main.command("enumerate")
@click.argument("weight", type=int)
@_registry_options
@_output_options
def cmd_enumerate(weight: int, x_list: str, omega_list: str, output: str, ascii_: bool) -> None:
    """All forests of the given WEIGHT, one per line, in canonical text order."""
    reg = _domain(_registry, x_list, omega_list)
    forests = _domain(lambda: list(enumerate_forests(weight, reg)))
    if output == "json":
        click.echo(json.dumps([f.text for f in forests]))
    else:
        for f in forests:
            click.echo(f.text)


@main.command("stats")
@click.argument("forest")
@_registry_options
@_output_options
def cmd_stats(forest: str, x_list: str, omega_list: str, output: str, ascii_: bool) -> None:
    """Weight, breadth, depth, X-leaf count and the vertex table of FOREST."""
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, forest, reg)
    s = stats(f)
    rows = vertex_table(f)
    if output == "json":
        click.echo(
            json.dumps(
                {
                    "weight": s.weight,
                    "breadth": s.breadth,
                    "depth": s.depth,
                    "x_leaves": s.x_leaves,
                    "vertices": [
                        {
                            "index": r.index,
                            "decoration": r.decoration.name,
                            "parent": r.parent,
                        }
                        for r in rows
                    ],
                }
            )
        )
    else:
        click.echo(f"weight: {s.weight}")
        click.echo(f"breadth: {s.breadth}")
        click.echo(f"depth: {s.depth}")
        click.echo(f"x_leaves: {s.x_leaves}")
        for r in rows:
            parent = "-" if r.parent is None else str(r.parent)
            click.echo(f"{r.index} {r.decoration.name} {parent}")


@main.command("phi")
@click.argument("forest")
@_registry_options
@_lambda_option
@_output_options
def cmd_phi(forest: str, x_list: str, omega_list: str, lam: str, output: str, ascii_: bool) -> None:
    """Rescaling morphism: FOREST scaled by λ^(number of X-leaves)."""
    reg = _domain(_registry, x_list, omega_list)
    f = _domain(parse_forest, forest, reg)
    value = _parse_lambda(lam)
    scale: PolyLambda | int = LAMBDA if value == _SYM else value
    _emit_lincomb(_domain(phi_lambda, as_lincomb(f), scale), output)


@main.command("verify")
@_registry_options
@click.option(
    "--max-weight",
    type=int,
    default=4,
    show_default=True,
    help="Exhaustive driver bound (capped at 6).",
)
@_lambda_option
@click.option(
    "--checks",
    default="",
    help=f"Comma-separated subset of: {', '.join(ALL_CHECKS)}.  Default: all.",
)
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
@click.pass_context
def cmd_verify(ctx: click.Context, x_list: str, omega_list: str, max_weight: int, lam: str, checks: str, output: str) -> None:
    """Run the conformance suite; exit 2 if any check fails."""
    reg = _domain(_registry, x_list, omega_list)
    value = _parse_lambda(lam)
    mode: str | tuple[int, ...] = "symbolic" if value == _SYM else (value,)
    selected = tuple(c.strip() for c in checks.split(",") if c.strip())
    cfg = _domain(SuiteConfig, reg, max_weight, mode, selected)
    reports = _domain(run_suite, cfg)
    if output == "json":
        click.echo(json.dumps([r.to_json_obj() for r in reports]))
    else:
        for r in reports:
            status = "ok" if r.passed else "FAIL"
            click.echo(f"{status:4} {r.check_name} ({r.instances_run} instances)")
            for fail in r.failures:
                click.echo(f"     witness: {fail.input}")
                click.echo(f"       lhs: {fail.lhs}")
                click.echo(f"       rhs: {fail.rhs}")
    if not all(r.passed for r in reports):
        ctx.exit(2)


if __name__ == "__main__":
    main()
