"""Thin command-line client for the verification service.

Every subcommand builds the same pydantic request the HTTP API accepts and
dispatches it either in-process (default) or to a running server via
--server URL; the report envelope is printed as JSON (or a text summary)
and the process exits with the report's exit code: 0 all verified, 2 a
named condition failed, 3 premise-only completion.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click

from . import __version__
from .errors import MumfordTameError
from .service import schemas
from .service.app import (
    construct as _construct_endpoint,
    construct_poly as _construct_poly_endpoint,
    excluded as _excluded_endpoint,
    frobenius as _frobenius_endpoint,
    goldbach as _goldbach_endpoint,
    igp as _igp_endpoint,
    table_check as _table_check_endpoint,
    type_check as _type_check_endpoint,
)

_ENDPOINTS = {
    "construct": ("/v1/construct", _construct_endpoint),
    "igp": ("/v1/igp", _igp_endpoint),
    "table-check": ("/v1/table-check", _table_check_endpoint),
    "goldbach": ("/v1/goldbach", _goldbach_endpoint),
    "excluded": ("/v1/excluded", _excluded_endpoint),
    "type-check": ("/v1/type-check", _type_check_endpoint),
    "construct-poly": ("/v1/construct-poly", _construct_poly_endpoint),
    "frobenius": ("/v1/frobenius", _frobenius_endpoint),
}


def _dispatch(command: str, request, server: Optional[str]) -> dict:
    path, endpoint = _ENDPOINTS[command]
    if server:
        import httpx

        response = httpx.post(
            server.rstrip("/") + path,
            json=json.loads(request.model_dump_json()),
            timeout=None,
        )
        if response.status_code != 200:
            raise click.ClickException(
                f"server returned {response.status_code}: {response.text}"
            )
        return response.json()
    from fastapi import HTTPException

    try:
        return endpoint(request).model_dump()
    except HTTPException as exc:
        raise click.ClickException(str(exc.detail))
    except MumfordTameError as exc:
        raise click.ClickException(str(exc))


def _emit(envelope: dict, fmt: str, out: Optional[str]):
    if fmt == "json":
        text = json.dumps(envelope, indent=2)
    else:
        text = _text_summary(envelope)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    click.echo(text)
    sys.exit(envelope.get("exit_code", 0))


def _text_summary(envelope: dict) -> str:
    report = envelope.get("report", {})
    lines = [
        f"command : {report.get('command', '?')}",
        f"status  : {envelope.get('status')}",
    ]
    for cond in report.get("conditions", []) + report.get("certificate", {}).get(
        "conditions", []
    ):
        lines.append(f"  [{cond['status']:4s}] {cond['id']}")
    for row in report.get("rows", []):
        if "ok" in row:
            mark = "pass" if row["ok"] else "FAIL"
            lines.append(f"  [{mark}] {row.get('id', row)}")
        else:
            lines.append(f"  g={row['g']}: {row.get('excluded', row.get('error'))}")
    if "triples" in report:
        lines.append(f"  triples: {report['triples']}")
    if "double_triples" in report:
        lines.append(f"  double triples: {report['double_triples']}")
    if "polynomial" in report:
        lines.append(f"  polynomial: {report['polynomial']}")
    if "charpoly" in report:
        lines.append(f"  charpoly: {report['charpoly']}")
    return "\n".join(lines)


_common = [
    click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                 default="json", show_default=True),
    click.option("--out", type=click.Path(), default=None,
                 help="also write the output to this path"),
    click.option("--server", default=None,
                 help="URL of a running service; default is in-process"),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="mumford-tame")
def main():
    """Tame-torsion Mumford curve constructions and certificates."""


@main.command()
@click.option("--g", type=int, help="genus (curve mode)")
@click.option("--p", type=int, help="prime (curve mode)")
@click.option("--n", type=int, default=2, show_default=True,
              help="truncation level")
@click.option("--m", type=int, default=None, help="torsion level (default p)")
@click.option("--precision", type=int, default=None,
              help="p-adic working precision (default m*(2g+2))")
@click.option("--degree", type=int, default=None,
              help="polynomial mode: target degree")
@click.option("--spec-file", type=click.Path(exists=True), default=None,
              help="polynomial mode: JSON list of local specs")
@common_options
def construct(g, p, n, m, precision, degree, spec_file, fmt, out, server):
    """Construct and verify a tame-torsion curve (--g/--p), or glue a typed
    polynomial from a spec file (--degree/--spec-file)."""
    if degree is not None or spec_file is not None:
        if degree is None or spec_file is None:
            raise click.UsageError("polynomial mode needs both --degree and --spec-file")
        with open(spec_file) as handle:
            items = json.load(handle)
        request = schemas.ConstructPolyRequest(
            degree=degree, specs=[schemas.SpecItem(**item) for item in items]
        )
        _emit(_dispatch("construct-poly", request, server), fmt, out)
        return
    if g is None or p is None:
        raise click.UsageError("curve mode needs --g and --p")
    if g < 1:
        raise click.UsageError("genus must be >= 1")
    request = schemas.ConstructRequest(g=g, p=p, n=n, m=m, precision=precision)
    _emit(_dispatch("construct", request, server), fmt, out)


@main.command()
@click.option("--g", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, default=2, show_default=True)
@common_options
def igp(g, p, n, fmt, out, server):
    """Checklist for realizing GSp_2g(F_p) tamely via a glued curve."""
    request = schemas.IgpRequest(g=g, p=p, n=n)
    _emit(_dispatch("igp", request, server), fmt, out)


@main.command("table-check")
@click.option("--rows", default="fast", show_default=True,
              help='"fast", "all", or comma-separated ids like "g3-p7"')
@click.option("--budget", type=int, default=None,
              help="override the point-counting budget")
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
def table_check(rows, budget, seed, fmt, out, server):
    """Re-verify the stored surjectivity table rows."""
    request = schemas.TableCheckRequest(rows=rows, budget=budget, seed=seed)
    _emit(_dispatch("table-check", request, server), fmt, out)


@main.command()
@click.option("--n", type=int, required=True, help="even integer >= 4")
@click.option("--double", is_flag=True, help="search nested double tuples")
@common_options
def goldbach(n, double, fmt, out, server):
    """List Goldbach triples (or double tuples) for an even n."""
    request = schemas.GoldbachRequest(n=n, double=double)
    _emit(_dispatch("goldbach", request, server), fmt, out)


@main.command()
@click.option("--g-max", type=int, required=True)
@common_options
def excluded(g_max, fmt, out, server):
    """Excluded primes for every genus up to g-max."""
    request = schemas.ExcludedRequest(g_max=g_max)
    _emit(_dispatch("excluded", request, server), fmt, out)


@main.command("type-check")
@click.option("--f", "poly", required=True,
              help='polynomial, e.g. "x^4+x^3-10*x^2-11*x-11" or "1,2,3"')
@click.option("--p", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--blocks", required=True, help="comma-separated block degrees")
@click.option("--precision", type=int, default=None)
@common_options
def type_check(poly, p, t, blocks, precision, fmt, out, server):
    """Check a factorization type t-{q1,...,qk} at p."""
    request = schemas.TypeCheckRequest(
        f=poly, p=p, t=t,
        blocks=[int(b) for b in blocks.split(",")],
        precision=precision,
    )
    _emit(_dispatch("type-check", request, server), fmt, out)


@main.command()
@click.option("--f", "poly", required=True)
@click.option("--ell", type=int, required=True)
@click.option("--genus", type=int, required=True)
@click.option("--budget", type=int, default=None)
@click.option("--p", type=int, default=None,
              help="also report irreducibility/trace of the charpoly mod p")
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
def frobenius(poly, ell, genus, budget, p, seed, fmt, out, server):
    """Point counts and the Frobenius characteristic polynomial."""
    request = schemas.FrobeniusRequest(
        f=poly, ell=ell, genus=genus, budget=budget, p=p, seed=seed
    )
    _emit(_dispatch("frobenius", request, server), fmt, out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("mumford_tame.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
