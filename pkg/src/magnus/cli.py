"""``magnus`` command line front end.

Exit status: 0 on success, 1 when a mathematical precondition fails (a word
that is not null-homologous, an uncertified multitwist, ...), 2 on parse or
configuration errors.
"""

from __future__ import annotations

import functools
import json
import sys
import time
from pathlib import Path

import click

from . import analysis
from .chains import chain_to_json, format_chain, is_curve, lift
from .freegroup import NotTorelli, boundary_word, endo_magnus_matrix, twist_endo
from .groupring import GenusMismatch, to_json
from .magnusrep import (
    MultiTwist,
    NotNullHomologous,
    UncertifiedMultiTwist,
    format_matrix,
    matrix_to_json,
    multitwist_matrix,
    product_matrix,
    t_value,
    twist_matrix,
)
from .pairing import (
    NotACurve,
    PairingTable,
    TableInvariantError,
    cached_table,
    derive_base_table,
    load_table,
    pair,
    pair_curve,
    save_table,
    table_path,
)
from .parsing import ParseError, parse_multitwist_expr, parse_twist_expr, parse_word_expr

DOMAIN_ERRORS = (
    NotNullHomologous,
    UncertifiedMultiTwist,
    NotACurve,
    NotTorelli,
    analysis.NonzeroSelfPairing,
    analysis.CommutingPair,
    analysis.ConsistencyError,
)


class DomainFailure(click.ClickException):
    exit_code = 1


class ConfigFailure(click.ClickException):
    exit_code = 2


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError as exc:
            raise ConfigFailure(f"parse error: {exc}") from exc
        except DOMAIN_ERRORS as exc:
            raise DomainFailure(f"{type(exc).__name__}: {exc}") from exc
        except (GenusMismatch, TableInvariantError, OSError, json.JSONDecodeError) as exc:
            raise ConfigFailure(f"{type(exc).__name__}: {exc}") from exc
        except ValueError as exc:
            raise DomainFailure(str(exc)) from exc

    return wrapper


def _common(fn):
    fn = click.option(
        "--table",
        "table_file",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Pairing table JSON to use instead of the cached one.",
    )(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
    )(fn)
    fn = click.option("--genus", "-g", type=click.IntRange(min=1), required=True)(fn)
    return _guard(fn)


def _table(genus: int, table_file: Path | None) -> PairingTable:
    if table_file is None:
        return cached_table(genus)
    try:
        table = load_table(table_file)
    except (KeyError, ValueError) as exc:
        raise ConfigFailure(f"bad table file {table_file}: {exc}") from exc
    if table.genus != genus:
        raise ConfigFailure(f"table {table_file} is for genus {table.genus}, not {genus}")
    return table


def _emit(fmt: str, text: str, data) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True))
    else:
        click.echo(text)


def _multitwist(src: str, genus: int, table: PairingTable) -> MultiTwist:
    factors = parse_multitwist_expr(src, genus)
    return MultiTwist(genus, tuple(factors), table)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Magnus representation of the Torelli group: lifts, pairings, twist matrices."""


@main.command("lift")
@click.argument("word")
@_common
def lift_cmd(word, genus, fmt, table_file):
    """Lift of WORD to the universal abelian cover, in the basis alpha_i, beta_i."""
    c = lift(parse_word_expr(word, genus))
    _emit(fmt, format_chain(c), {"chain": chain_to_json(c), "curve": is_curve(c)})


@main.command("pair")
@click.argument("first")
@click.argument("second")
@click.option("--sigma", type=click.Choice(["+", "-"]), help="Needed when neither lift is a curve.")
@_common
def pair_cmd(first, second, sigma, genus, fmt, table_file):
    """Higher intersection pairing of the lifts of two words."""
    table = _table(genus, table_file)
    c = lift(parse_word_expr(first, genus))
    d = lift(parse_word_expr(second, genus))
    value = pair_curve(c, d, table) if sigma is None else pair(c, d, sigma, table)
    _emit(fmt, str(value), {"sigma": sigma, "pairing": to_json(value)})


def _product(expr: str, genus: int, table: PairingTable):
    factors = parse_twist_expr(expr, genus)
    mats = []
    flat = []
    for kind, items in factors:
        if kind == "M":
            mt = MultiTwist(genus, tuple(items), table)
            mats.append(multitwist_matrix(mt))
        else:
            (w, n), = items
            mats.append(twist_matrix(w, n, table))
        flat.extend(items)
    return product_matrix(mats, genus), flat


@main.command("rep")
@click.argument("expr")
@_common
def rep_cmd(expr, genus, fmt, table_file):
    """Matrix of a product of twists, e.g. "T[[A1,B1]]^2 M[[A2,B2]]"."""
    m, _ = _product(expr, genus, _table(genus, table_file))
    _emit(fmt, format_matrix(m), {"genus": genus, "matrix": matrix_to_json(m)})


@main.command("trace")
@click.argument("expr")
@_common
def trace_cmd(expr, genus, fmt, table_file):
    """t = trace - 2g of a twist product, from pairings and checked by matrices."""
    table = _table(genus, table_file)
    m, flat = _product(expr, genus, table)
    value = analysis.trace_product_formula(flat, table)
    if value != t_value(m):
        raise analysis.ConsistencyError(f"formula {value} vs matrix {t_value(m)}")
    _emit(fmt, str(value), {"t": to_json(value)})


@main.command("commutator")
@click.argument("first")
@click.argument("second")
@_common
def commutator_cmd(first, second, genus, fmt, table_file):
    """Decide whether [T_first, T_second] lies in the kernel of r."""
    table = _table(genus, table_file)
    u, v = parse_word_expr(first, genus), parse_word_expr(second, genus)
    verdict = analysis.commutator_in_kernel(u, v, table)
    t = analysis.commutator_trace(u, v, table)
    _emit(
        fmt,
        f"in-kernel: {str(verdict).lower()}",
        {"in_kernel": verdict, "trace": to_json(t)},
    )


@main.command("classify")
@click.argument("first")
@click.argument("second")
@_common
def classify_cmd(first, second, genus, fmt, table_file):
    """Commute-or-free verdict for two multitwists M[w^n, ...] or T[w]^n."""
    table = _table(genus, table_file)
    tc, td = _multitwist(first, genus, table), _multitwist(second, genus, table)
    v = analysis.classify_multitwist_pair(tc, td)
    text = v.kind
    if v.witness:
        text += f"\nwitness: <c{v.witness.i}, d{v.witness.j}> = {v.witness.pairing}"
    _emit(fmt, text, v.to_json())


@main.command("norelation")
@click.argument("first")
@click.argument("second")
@click.option("--max-length", "-L", type=click.IntRange(min=1), default=6, show_default=True)
@_common
def norelation_cmd(first, second, max_length, genus, fmt, table_file):
    """Search reduced words in T_C, T_D up to the given length for a relation."""
    table = _table(genus, table_file)
    tc, td = _multitwist(first, genus, table), _multitwist(second, genus, table)
    report = analysis.verify_no_relation(tc, td, max_length)
    lines = [
        f"words checked: {report.words_checked}",
        f"A^2 = 0: {str(report.a_squared_zero).lower()}",
        f"B^2 = 0: {str(report.b_squared_zero).lower()}",
        f"tr(AB): {report.trace_ab}",
        f"tr(AB) identity: {str(report.trace_ab_matches).lower()}",
        f"relation: {report.relation or 'none'}",
    ]
    _emit(fmt, "\n".join(lines), report.to_json())
    if not report.ok:
        raise DomainFailure("no-relation check failed")


@main.command("derive-table")
@_common
def derive_table_cmd(genus, fmt, table_file):
    """Derive the base pairing table from the cover model and store it."""
    t0 = time.perf_counter()
    table = derive_base_table(genus)
    path = table_file or table_path(genus)
    save_table(table, path)
    _emit(
        fmt,
        f"wrote {path} ({len(table.base)} entries, {time.perf_counter() - t0:.2f}s)",
        {"path": str(path), "entries": len(table.base)},
    )


@main.command("selftest")
@_common
def selftest_cmd(genus, fmt, table_file):
    """Quick consistency checks at the given genus."""
    table = _table(genus, table_file)
    checks = []
    table.check_invariants()
    checks.append(("table invariants", True))
    ok = all(
        twist_matrix(boundary_word(genus, k), n, table)
        == endo_magnus_matrix(twist_endo(k, n, genus))
        for k in range(1, genus + 1)
        for n in (1, 2, -1)
    )
    checks.append(("twist formula vs Fox calculus", ok))
    checks.append(
        ("boundary lifts nonzero", all(not lift(boundary_word(genus, k)).is_zero() for k in range(1, genus + 1)))
    )
    if genus >= 2:
        d1, d2 = boundary_word(genus, 1), boundary_word(genus, 2)
        checks.append(("disjoint commutator in kernel", analysis.commutator_in_kernel(d1, d2, table)))
    _emit(
        fmt,
        "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks),
        {name: ok for name, ok in checks},
    )
    if not all(ok for _, ok in checks):
        sys.exit(1)


if __name__ == "__main__":
    main()
