"""Command-line client for the sequence-calculus service.

By default requests run against the in-process app (no server needed);
--url points the same commands at a remote instance.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import httpx


def _client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=600.0)
    # In-process client: drive the ASGI app directly, no server required.
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    with _client(ctx.obj.get("url")) as client:
        resp = client.post(path, json=payload)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.ClickException(f"{path}: {detail}")
    return resp.json()


def _parse_values(values: str | None, file: str | None) -> list[int]:
    if (values is None) == (file is None):
        raise click.UsageError("give exactly one of --values or --file")
    if file is not None:
        text = sys.stdin.read() if file == "-" else open(file).read()
    else:
        text = values
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(data: dict, fmt: str, rows_key: str | None = None) -> None:
    if fmt == "records":
        click.echo(json.dumps(data, indent=2))
        return
    if fmt == "csv":
        rows = data.get(rows_key) if rows_key else None
        buf = io.StringIO()
        if isinstance(rows, list) and rows and isinstance(rows[0], dict):
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        else:
            writer = csv.writer(buf)
            writer.writerow(data.keys())
            writer.writerow(data.values())
        click.echo(buf.getvalue().rstrip("\n"))
        return
    # human
    for key, value in data.items():
        if rows_key and key == rows_key:
            continue
        click.echo(f"{key}: {value}")
    if rows_key and data.get(rows_key):
        for row in data[rows_key]:
            click.echo("  " + "  ".join(f"{k}={v}" for k, v in row.items()
                                        if v is not None))


fmt_option = click.option("--format", "fmt", default="human",
                          type=click.Choice(["human", "csv", "records"]))


@click.group()
@click.option("--url", default=None, help="Base URL of a running service; "
              "defaults to the in-process app.")
@click.pass_context
def main(ctx: click.Context, url: str | None) -> None:
    """Periodic-sequence calculus over Z_m."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.group()
def seq() -> None:
    """Operations on a single periodic sequence."""


@seq.command("period")
@click.option("--mod", type=int, required=True)
@click.option("--values", default=None)
@click.option("--file", default=None)
@fmt_option
@click.pass_context
def seq_period(ctx, mod, values, file, fmt):
    """Minimal period and trace."""
    data = _post(ctx, "/seq/period", {
        "sequence": {"modulus": mod, "period": _parse_values(values, file)}})
    _emit(data, fmt)


@seq.command("decompose")
@click.option("--mod", type=int, required=True)
@click.option("--values", default=None)
@click.option("--file", default=None)
@fmt_option
@click.pass_context
def seq_decompose(ctx, mod, values, file, fmt):
    """Prime-power localization and idempotent/nilpotent split of each part."""
    data = _post(ctx, "/seq/decompose", {
        "sequence": {"modulus": mod, "period": _parse_values(values, file)}})
    _emit(data, fmt if fmt != "human" else "records")


@seq.command("primitive")
@click.option("--mod", type=int, required=True)
@click.option("--values", default=None)
@click.option("--file", default=None)
@click.option("--s", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--cap", type=int, default=1 << 16)
@fmt_option
@click.pass_context
def seq_primitive(ctx, mod, values, file, s, seed, cap, fmt):
    """s-fold iterated sum; falls back to a period prediction above --cap."""
    data = _post(ctx, "/seq/primitive", {
        "sequence": {"modulus": mod, "period": _parse_values(values, file)},
        "s": s, "seed": seed, "cap": cap})
    _emit(data, fmt if fmt != "human" else "records")


@seq.command("crt")
@click.option("--part", "parts", multiple=True, required=True,
              help="mod:v0,v1,...  (repeatable, pairwise coprime moduli)")
@fmt_option
@click.pass_context
def seq_crt(ctx, parts, fmt):
    """Recombine prime-power parts into one sequence."""
    records = []
    for part_spec in parts:
        mod_str, _, vals = part_spec.partition(":")
        records.append({"modulus": int(mod_str),
                        "period": [int(x) for x in vals.split(",")]})
    data = _post(ctx, "/seq/crt", {"parts": records})
    _emit(data, fmt if fmt != "human" else "records")


@main.command("predict-period")
@click.option("--mod", type=int, required=True)
@click.option("--values", default=None)
@click.option("--file", default=None)
@click.option("--s", type=int, required=True)
@fmt_option
@click.pass_context
def predict_period(ctx, mod, values, file, s, fmt):
    """Predicted period of the s-th primitive, without materializing it."""
    data = _post(ctx, "/seq/predict-period", {
        "sequence": {"modulus": mod, "period": _parse_values(values, file)},
        "s": s})
    _emit(data, fmt if fmt != "human" else "records")


@main.command("binom-stats")
@click.option("--p", type=int, required=True)
@click.option("--ell", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--cap", type=int, default=1 << 16)
@fmt_option
@click.pass_context
def binom_stats(ctx, p, ell, s, cap, fmt):
    """Valuation census of the s-th binomial sequence mod p^ell."""
    data = _post(ctx, "/binom/stats",
                 {"p": p, "ell": ell, "s": s, "cap": cap})
    _emit(data, fmt)


@main.command("binom-reduce")
@click.option("--p", type=int, required=True)
@click.option("--ell", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--cap", type=int, default=1 << 20)
@fmt_option
@click.pass_context
def binom_reduce(ctx, p, ell, s, cap, fmt):
    """Digit-pattern reduction chain for bin_s, with resulting statistics."""
    data = _post(ctx, "/binom/reduce",
                 {"p": p, "ell": ell, "s": s, "cap": cap})
    _emit(data, fmt, rows_key="chain")


@main.command("vieru-z")
@click.option("--k", type=int, required=True)
@click.option("--verify", is_flag=True, default=False,
              help="Also run the brute-force oracle per s; exit 1 on mismatch.")
@fmt_option
@click.pass_context
def vieru_z(ctx, k, verify, fmt):
    """Zero counts Z(s) for the dyadic block 2^k <= s < 2^(k+1)."""
    data = _post(ctx, "/vieru/z", {"k": k, "verify": verify})
    _emit(data, fmt, rows_key="rows")
    if verify and data["mismatches"]:
        raise click.exceptions.Exit(1)


@main.command("vieru-d")
@click.option("--k", type=int, required=True)
@fmt_option
@click.pass_context
def vieru_d(ctx, k, fmt):
    """The correction sequence d_k in all three forms; exits 1 if they differ."""
    data = _post(ctx, "/vieru/d", {"k": k})
    _emit(data, fmt)
    if not data["agree"]:
        raise click.exceptions.Exit(1)


@main.command("verify")
@click.option("--suite", required=True,
              type=click.Choice(["lemmas", "periods", "structure", "vieru"]))
@click.option("--p", type=int, default=2)
@click.option("--ell", type=int, default=2)
@click.option("--s-max", type=int, default=64)
@click.option("--k", "k_max", type=int, default=7)
@click.option("--samples", type=int, default=100)
@click.option("--seed", type=int, default=1729)
@click.option("--mod", "moduli", type=int, multiple=True,
              default=(4, 8, 9, 12))
@fmt_option
@click.pass_context
def verify_cmd(ctx, suite, p, ell, s_max, k_max, samples, seed, moduli, fmt):
    """Run a conformance suite against the brute-force oracles."""
    data = _post(ctx, "/verify", {
        "suite": suite, "p": p, "ell": ell, "s_max": s_max, "k_max": k_max,
        "samples": samples, "seed": seed, "moduli": list(moduli)})
    _emit(data, fmt, rows_key="failures")
    if not data["ok"]:
        raise click.exceptions.Exit(1)


@main.command("bench")
@click.option("--p", type=int, default=2)
@click.option("--ell", type=int, default=2)
@click.option("--s-start", type=int, default=1 << 10)
@click.option("--s-stop", type=int, default=1 << 11)
@fmt_option
@click.pass_context
def bench(ctx, p, ell, s_start, s_stop, fmt):
    """Time the reduction chains against direct materialization."""
    data = _post(ctx, "/bench", {"p": p, "ell": ell,
                                 "s_start": s_start, "s_stop": s_stop})
    _emit(data, fmt)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("modseq.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
