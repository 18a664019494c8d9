"""Command-line harness: enumerate, verify, table."""

import csv
import io
import json
import sys

import click

from . import counting, verify as verify_mod
from .adlv import IDENTITY, SUPERSINGULAR, diagonal, nonempty
from .building import to_dot
from .census import buckets
from .errors import AdlvError, PrecisionExhausted
from .ff import field, prime_power

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _case(b, alpha):
    if b == "identity":
        return IDENTITY
    if b == "supersingular":
        return SUPERSINGULAR
    return diagonal(alpha)


def _config_error(msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_CONFIG)


def _validate(q, n, R, alpha, precision, verify_mode=False):
    try:
        prime_power(q)
    except ValueError:
        _config_error(f"q={q} is not a prime power")
    if verify_mode and q > 5:
        _config_error(f"verify mode needs q <= 5 (got q={q})")
    if n < 1:
        _config_error("n must be positive")
    if R < 0 or R > 8:
        _config_error(f"R must lie in [0, 8] (got R={R})")
    need = 2 * R + alpha + 6
    if precision is not None and precision < need:
        _config_error(f"precision {precision} below 2R + alpha + 6 = {need} (q={q}, n={n}, R={R}, alpha={alpha})")


b_option = click.option("--b", "b", type=click.Choice(["identity", "diagonal", "supersingular"]), default="identity")
alpha_option = click.option("--alpha", type=int, default=1, show_default=True)
q_option = click.option("--q", type=int, default=2, show_default=True)
n_option = click.option("--n", type=int, default=1, show_default=True)
R_option = click.option("--R", "R", type=int, default=3, show_default=True)
precision_option = click.option("--precision", type=int, default=None, help="series precision; must be >= 2R+alpha+6")
seed_option = click.option("--seed", type=int, default=0, show_default=True)


@click.group()
def main():
    """Affine Deligne-Lusztig sets for GL_2 in the Bruhat-Tits tree."""


@main.command("enumerate")
@b_option
@alpha_option
@q_option
@n_option
@R_option
@click.option("--w-min", type=int, default=None)
@click.option("--w-max", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv", "dot"]), default="text")
@click.option("--members/--no-members", default=False, help="list bucket members (json, text)")
@seed_option
@precision_option
def enumerate_cmd(b, alpha, q, n, R, w_min, w_max, fmt, members, seed, precision):
    """Brute-force buckets of inv(D, b sigma D) over the radius-R window."""
    if b != "diagonal":
        alpha = 0
    elif alpha <= 0:
        _config_error("the diagonal case needs alpha > 0")
    _validate(q, n, R, alpha, precision)
    case = _case(b, alpha)
    w_min = -R if w_min is None else w_min
    w_max = R if w_max is None else w_max
    try:
        ctx = field(q, n)
        idx = list(range(w_min, w_max + 1))
        res = buckets(case, ctx, R, idx, members=members or fmt == "dot")
    except PrecisionExhausted as e:
        _config_error(f"{e} (q={q}, n={n}, R={R}, alpha={alpha})")
    except (AdlvError, ValueError) as e:
        _config_error(str(e))
    sizes = res["sizes"]
    if fmt == "dot":
        hl = [D for w in idx for D in res["members"].get(w, [])]
        click.echo(to_dot(R + 1, ctx, hl, name=f"bucket_{b}"), nl=False)
        return
    if fmt == "json":
        doc = {
            "b": b, "alpha": alpha, "q": q, "n": n, "R": R,
            "buckets": {str(w): sizes[w] for w in idx},
            "nonempty": {str(w): nonempty(case, w) for w in idx},
        }
        if members:
            doc["members"] = {str(w): [str(D) for D in res["members"][w]] for w in idx}
        click.echo(json.dumps(doc, sort_keys=True, indent=1))
        return
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["index", "size", "nonempty"])
        for w in idx:
            wr.writerow([w, sizes[w], nonempty(case, w)])
        click.echo(buf.getvalue(), nl=False)
        return
    click.echo(f"{case.label()}  q={q} n={n} R={R}")
    for w in idx:
        click.echo(f"  w={w:+d}  size={sizes[w]}  nonempty={nonempty(case, w)}")
        if members:
            for D in res["members"][w]:
                click.echo(f"    {D}")


@main.command()
@click.option("--suite", type=click.Choice(("all",) + verify_mod.SUITES), default="all")
@click.option("--q", type=int, default=None, help="restrict to one q")
@click.option("--n", type=int, default=None, help="restrict to one level n")
@click.option("--R", "R", type=int, default=6, show_default=True)
@click.option("--inject-fault", is_flag=True, help="flip one m-parity entry")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@seed_option
@precision_option
def verify(suite, q, n, R, inject_fault, fmt, seed, precision):
    """Run verification suites; exit 1 on any failure."""
    _validate(q or 2, n or 1, R, 3, precision, verify_mode=True)
    suites = verify_mod.SUITES if suite == "all" else (suite,)
    flip = (1, 1) if inject_fault else None
    try:
        checks = verify_mod.run(suites, q=q, n=n, R=R, seed=seed, flip=flip)
    except PrecisionExhausted as e:
        _config_error(f"{e} (q={q}, n={n}, R={R})")
    failed = [c for c in checks if not c["ok"]]
    if fmt == "json":
        doc = {"seed": seed, "fault_injected": inject_fault, "suites": list(suites),
               "passed": len(checks) - len(failed), "failed": len(failed), "checks": checks}
        click.echo(json.dumps(doc, sort_keys=True, indent=1, default=str))
    else:
        for c in checks:
            click.echo(f"{'PASS' if c['ok'] else 'FAIL'}  [{c['suite']}] {c['name']}")
        click.echo(f"{len(checks) - len(failed)} passed, {len(failed)} failed (seed {seed})")
    sys.exit(EXIT_FAIL if failed else EXIT_OK)


@main.command()
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "text"]), default="csv")
def table(fmt):
    """The three-row table of cases, conditions, groups and components."""
    if fmt == "csv":
        click.echo(counting.table_csv(), nl=False)
    elif fmt == "json":
        rows = [dict(zip(counting.TABLE_HEADER, r)) for r in counting.table_rows()]
        click.echo(json.dumps(rows, indent=1))
    else:
        for r in counting.table_rows():
            click.echo(" | ".join(r))


if __name__ == "__main__":
    main()
