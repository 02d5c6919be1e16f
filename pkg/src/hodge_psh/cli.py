"""Command-line driver: hodge-psh {diamond, sample, levi, verify, report-merge}."""

import csv
import io
import json
import math
import sys

import click
import numpy as np

from .chart import disc_from_json, make_horizontal_disc
from .diamond import check_diamond, diamond
from .errors import HodgePshError
from .hodge_core import MIN_H, build_model, canonical_kind
from .psh import levi as levi_values
from .seeding import MASK, mix
from .suites import SUITES, verify as run_verify

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _kind(ctx, param, value):
    if value is None:
        return None
    try:
        return canonical_kind(value)
    except HodgePshError as exc:
        raise click.BadParameter(str(exc)) from None


def _floats(ctx, param, value):
    if value is None:
        return None
    try:
        out = [float(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from None
    if not out:
        raise click.BadParameter("empty list")
    return out


def _model(kind, h):
    try:
        return build_model(kind, h if h is not None else MIN_H[kind])
    except HodgePshError as exc:
        raise click.UsageError(str(exc)) from None


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1)


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


type_opt = click.option("--type", "kind", required=True, callback=_kind, help="degeneration type")
h_opt = click.option("--h", "h", type=int, default=None, help="middle Hodge number (default: minimum)")
fmt_opt = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json")
out_opt = click.option("--output", "output", type=click.Path(dir_okay=False), default=None)
seed_opt = click.option("--seed", type=click.IntRange(0, MASK), required=True, help="64-bit master seed")


@click.group()
def main():
    """Hodge norm and plurisubharmonicity checks on nilpotent-orbit period charts."""


@main.command("diamond")
@type_opt
@h_opt
@click.option("--space", type=click.Choice(["V", "H", "both"]), default="both")
@click.option("--check", is_flag=True, help="compare with the tabulated marked entries")
@fmt_opt
@out_opt
def cmd_diamond(kind, h, space, check, fmt, output):
    """Deligne splitting dimensions of V and/or H = wedge^2 V."""
    model = _model(kind, h)
    tags = ["V", "H"] if space == "both" else [space]
    tables = [diamond(model, t) for t in tags]
    bad = [b for t in tags for b in check_diamond(model.kind, model.h, t)] if check else []
    if fmt == "json":
        payload = {"type": model.kind, "h": model.h,
                   "tables": [json.loads(t.to_json()) for t in tables]}
        if check:
            payload["mismatches"] = bad
        text = _dumps(payload)
    elif fmt == "csv":
        text = _csv([[t.space, p, q, d] for t in tables for (p, q), d in sorted(t.entries.items())],
                     ["space", "p", "q", "dim"])
    else:
        parts = []
        for t in tables:
            parts.append(f"{model.kind} h={model.h} space {t.space} (m = {t.m_label})\n{t.text()}")
            if t.markers:
                parts.append("markers: " + ", ".join(f"{k} {v}" for k, v in sorted(t.markers.items())))
        parts += [f"MISMATCH {b}" for b in bad]
        text = "\n".join(parts)
    _emit(text, output)
    sys.exit(EXIT_VIOLATION if bad else EXIT_OK)


@main.command("sample")
@type_opt
@h_opt
@seed_opt
@click.option("--trials", type=click.IntRange(1, 100000), default=1)
@click.option("--degree", type=click.IntRange(0, 8), default=2)
@click.option("--tangency", type=click.IntRange(0, 8), default=1)
@click.option("--bound", type=click.FloatRange(0, 0.1), default=0.05)
@fmt_opt
@out_opt
def cmd_sample(kind, h, seed, trials, degree, tangency, bound, fmt, output):
    """Random exactly horizontal discs; trial i uses seed mix(seed, i)."""
    model = _model(kind, h)
    try:
        discs = [make_horizontal_disc(model, mix(seed, i), degree, tangency, bound) for i in range(trials)]
    except HodgePshError as exc:
        raise click.UsageError(str(exc)) from None
    if fmt == "json":
        text = _dumps(discs[0].to_dict() if trials == 1 else {"discs": [d.to_dict() for d in discs]})
    else:
        rows = [[i, name, k, c.real, c.imag] for i, d in enumerate(discs)
                for name, p in sorted(d.entries.items()) for k, c in enumerate(p)]
        text = _csv(rows, ["trial", "entry", "power", "re", "im"])
    _emit(text, output)
    sys.exit(EXIT_OK)


@main.command("levi")
@click.option("--disc", "disc_path", type=click.Path(dir_okay=False), required=True)
@click.option("--radii", callback=_floats, required=True, help="comma-separated |s| values")
@click.option("--thetas", callback=_floats, default="0", help="comma-separated arguments of s")
@click.option("--rho", "selector", type=click.Choice(["sum", "rho0", "rho1"]), default="sum")
@fmt_opt
@out_opt
def cmd_levi(disc_path, radii, thetas, selector, fmt, output):
    """Levi values of rho along a serialized disc at s = r e^{i theta}."""
    try:
        with open(disc_path) as fh:
            disc = disc_from_json(fh.read())
    except (OSError, ValueError, HodgePshError) as exc:
        click.echo(f"error: cannot load disc: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    rows = []
    try:
        for th in thetas:
            s = np.array(radii) * np.exp(1j * th)
            for r, v in zip(radii, levi_values(disc, s, selector)):
                rows.append({"radius": r, "theta": th, "value": float(v)})
    except HodgePshError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VIOLATION)
    if fmt == "json":
        text = _dumps({"rho": selector, "type": disc.kind, "values": rows})
    elif fmt == "csv":
        text = _csv([[r["radius"], r["theta"], repr(r["value"])] for r in rows], ["radius", "theta", "value"])
    else:
        text = "\n".join(f"r={r['radius']:.3e} theta={r['theta']:.4f} levi={r['value']!r}" for r in rows)
    _emit(text, output)
    sys.exit(EXIT_OK)


@main.command("verify")
@type_opt
@h_opt
@seed_opt
@click.option("--trials", type=click.IntRange(1, 100000), default=50)
@click.option("--suite", "suites", multiple=True, type=click.Choice(sorted(SUITES)), help="subset of suites")
@fmt_opt
@out_opt
def cmd_verify(kind, h, seed, trials, suites, fmt, output):
    """Run the verification suites; exit 1 on any violation."""
    model = _model(kind, h)
    report = run_verify(model, seed, trials, suites or None)
    if fmt == "json":
        text = _dumps(report)
    else:
        rows = [[r["suite"], r["trials"], len(r["violations"]), json.dumps(r["worstMargins"], sort_keys=True),
                 "; ".join(r["notes"])] for r in report["suites"]]
        if fmt == "csv":
            text = _csv(rows, ["suite", "trials", "violations", "worst", "notes"])
        else:
            text = "\n".join(f"{a:<24} trials={b:<6} violations={c:<4} {d} {e}".rstrip() for a, b, c, d, e in rows)
            text += f"\ntotal violations: {report['violations']}"
    _emit(text, output)
    sys.exit(EXIT_VIOLATION if report["violations"] else EXIT_OK)


@main.command("report-merge")
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@out_opt
def cmd_report_merge(paths, output):
    """Concatenate verify reports into one JSON document."""
    reports = []
    for p in paths:
        try:
            with open(p) as fh:
                rep = json.load(fh)
        except (OSError, ValueError) as exc:
            click.echo(f"error: {p}: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        if not isinstance(rep, dict) or "suites" not in rep:
            click.echo(f"error: {p} is not a verify report", err=True)
            sys.exit(EXIT_USAGE)
        reports.append(rep)
    merged = {"reports": reports, "violations": sum(int(r.get("violations", 0)) for r in reports)}
    _emit(_dumps(merged), output)
    sys.exit(EXIT_VIOLATION if merged["violations"] else EXIT_OK)


if __name__ == "__main__":
    main()
