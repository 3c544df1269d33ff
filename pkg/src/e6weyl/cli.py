"""Command-line verification harness.

Reports are canonical JSON (sorted keys, no timings); wall-clock timings go to
a ``<out>.timings.json`` sidecar so the certified payload is byte-stable.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import __version__
from .cyclotomic import default_primes
from .exactlin import make_field
from .liealg import UnclassifiableError, classify, fixed_subspace, order_of

SCHEMA = "e6weyl-report/1"


def _field(arith: str, prime: int | None):
    if arith == "exact" and prime is not None:
        raise click.UsageError("--prime only applies with --arith modular")
    return make_field(arith, prime)


def _report(kind: str, field, payload: dict, ok: bool) -> dict:
    from .acceptance import field_label

    label = field_label(field)
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": kind,
        "arithmetic": label,
        "ok": ok,
        # only exact-mode results are certificates
        "certified": ok and label["mode"] == "exact",
        "results": payload,
    }


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False, default=str) + "\n"


def _emit(report: dict, out: str | None, timings: dict | None = None, markdown: str | None = None) -> None:
    text = _canonical(report)
    if out is None:
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    if timings is not None:
        path.with_suffix(".timings.json").write_text(_canonical(timings))
    if markdown is not None:
        path.with_suffix(".md").write_text(markdown)


def common(fn):
    fn = click.option("--jobs", default=1, show_default=True, type=click.IntRange(1), help="Worker processes.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), help="Write the JSON report here.")(fn)
    fn = click.option("--prime", type=int, help="Prime p = 1 mod 36 for modular mode (default: first above 2^30).")(fn)
    fn = click.option("--arith", type=click.Choice(["exact", "modular"]), default="exact", show_default=True)(fn)
    return fn


def _finish(ok: bool) -> None:
    sys.exit(0 if ok else 1)


@click.group()
@click.version_option(__version__)
def main():
    """Exact verification of e6 models, fine gradings and their Weyl groups."""


@main.command()
@click.option("--model", "names", multiple=True, help="Model to build (repeatable; default all).")
@common
def build(names, arith, prime, out, jobs):
    """Build models and print their block dimensions."""
    from .models import MODEL_BUILDERS, build_model

    field = _field(arith, prime)
    names = names or tuple(MODEL_BUILDERS)
    payload, timings = {}, {}
    for name in names:
        t = time.perf_counter()
        M = build_model(name)
        timings[name] = round(time.perf_counter() - t, 3)
        payload[name] = {"dim": M.dim, "blocks": {k: len(r) for k, r in M.blocks.items()},
                         "scalars": {k: (v.to_text() if v is not None else None) for k, v in M.scalars.items()}}
        click.echo(f"{name}: dim {M.dim}, blocks {payload[name]['blocks']}")
    _emit(_report("build", field, payload, True), out, timings)


@main.group()
def verify():
    """Run verification targets."""


@verify.command("model")
@click.option("--name", required=True, help="Model name, e.g. tits-oct-jordan.")
@common
def verify_model(name, arith, prime, out, jobs):
    """Dimension and exact Jacobi identity on all basis triples."""
    from .models import build_model

    field = _field(arith, prime)
    M = build_model(name)
    t = time.perf_counter()
    rep = M.algebra.over(field).check_jacobi(jobs)
    dt = round(time.perf_counter() - t, 3)
    ok = rep.ok and M.dim == 78
    click.echo(f"{name}: dim {M.dim}, Jacobi {'pass' if rep.ok else 'FAIL'} on {rep.triples} triples")
    if not rep.ok:
        click.echo(f"  witness triple {rep.witness}")
    payload = {"model": name, "dim": M.dim, "jacobi": rep.ok, "triples": rep.triples,
               "witness": list(rep.witness) if rep.witness else None}
    _emit(_report("verify model", field, payload, ok), out, {"jacobi": dt})
    _finish(ok)


@verify.command("grading")
@click.option("--id", "gid", required=True, type=click.IntRange(1, 6))
@click.option("--realization", help="Model realizing the grading (default: the primary one).")
@click.option("--emit-type", is_flag=True, help="Print only the grading type.")
@click.option("--with-basis", is_flag=True, help="Include component bases in the JSON report.")
@common
def verify_grading(gid, realization, emit_type, with_basis, arith, prime, out, jobs):
    """Build a fine grading and compare its type with the claimed one."""
    from .gradings import EXPECTED_TYPES, build_gamma

    field = _field(arith, prime)
    t = time.perf_counter()
    gr = build_gamma(gid, field, realization)
    dt = round(time.perf_counter() - t, 3)
    typ = gr.type()
    ok = typ == EXPECTED_TYPES[gid]
    text = "(" + ",".join(map(str, typ)) + ")"
    if emit_type:
        click.echo(text)
    else:
        click.echo(f"Gamma{gid} over {gr.signature.describe()}: type {text} "
                   f"({'matches' if ok else 'differs from'} the claimed {EXPECTED_TYPES[gid]})")
    _emit(_report("verify grading", field, {"grading": gid, **gr.to_json(with_basis)}, ok), out, {"build": dt})
    _finish(ok)


@verify.command("weyl")
@click.option("--id", "gid", required=True, type=click.IntRange(1, 6))
@click.option("--expect-order", type=int, help="Fail unless the closure has this order.")
@common
def verify_weyl_cmd(gid, expect_order, arith, prime, out, jobs):
    """Displays, closure order, membership, shapes and obstructions for one grading."""
    from .weyl import verify_weyl

    field = _field(arith, prime)
    t = time.perf_counter()
    rep = verify_weyl(gid, field)
    dt = round(time.perf_counter() - t, 3)
    ok = rep["ok"] and (expect_order is None or rep["closure_order"] == expect_order)
    click.echo(f"Gamma{gid}: closure order {rep['closure_order']}, claimed {rep['claimed_order']} ({rep['claimed_order_formula']})")
    for k, v in rep["checks"].items():
        click.echo(f"  {k:12s} {'pass' if v else 'FAIL'}")
    for d in rep["displays"]:
        if not d["ok"]:
            click.echo(f"  display {d['display']}: expected {d['expected']}, computed {d['computed']}")
    if expect_order is not None:
        click.echo(f"  expected order {expect_order}: {'pass' if rep['closure_order'] == expect_order else 'FAIL'}")
    _emit(_report("verify weyl", field, rep, ok), out, {"verify_weyl": dt})
    _finish(ok)


@verify.command("obstructions")
@click.option("--id", "gid", required=True, type=click.IntRange(1, 6))
@common
def verify_obstructions(gid, arith, prime, out, jobs):
    """Conjugacy-type facts used by the maximality arguments."""
    from .weyl import obstruction_checks

    field = _field(arith, prime)
    t = time.perf_counter()
    checks = obstruction_checks(gid, field)
    dt = round(time.perf_counter() - t, 3)
    ok = all(c["ok"] for c in checks)
    for c in checks:
        click.echo(f"{'pass' if c['ok'] else 'FAIL'}  {c['name']}: {c['computed']}")
    if not checks:
        click.echo(f"Gamma{gid}: no obstruction checks")
    _emit(_report("verify obstructions", field, {"grading": gid, "checks": checks}, ok), out, {"obstructions": dt})
    _finish(ok)


@verify.command("all")
@click.option("--primes", help="Comma-separated primes for criterion 8 (default: three primes = 1 mod 36 above 2^30).")
@common
def verify_all(primes, arith, prime, out, jobs):
    """The full acceptance suite; exit status 0 iff every criterion passes."""
    from .acceptance import run_all, summary_markdown, summary_rows

    if arith != "exact" or prime is not None:
        raise click.UsageError("verify all runs in exact mode; modular agreement is criterion 8 (see --primes)")
    plist = [int(p) for p in primes.split(",")] if primes else default_primes(3)
    criteria, timings, B = run_all(jobs, plist)
    for c in criteria:
        click.echo(f"criterion {c.number} ({c.title}): {'PASS' if c.ok else 'FAIL'}")
        for f in c.failures:
            click.echo(f"    failing: {f}")
    ok = all(c.ok for c in criteria)
    rows = summary_rows(B)
    md = summary_markdown(rows, criteria)
    click.echo("")
    click.echo(md)
    payload = {"criteria": [c.to_json() for c in criteria], "summary": rows, "primes": plist}
    _emit(_report("verify all", make_field("exact"), payload, ok), out, timings, md)
    _finish(ok)


@main.command()
@click.option("--model", "name", required=True)
@common
def dump(name, arith, prime, out, jobs):
    """Structure constants, one line 'i j k c' per nonzero entry."""
    from .models import build_model

    text = build_model(name).algebra.dump()
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _parse_params(items) -> dict:
    from .cyclotomic import CycloScalar

    out = {}
    for item in items:
        k, _, v = item.partition("=")
        if not _:
            raise click.BadParameter(f"expected key=value, got {item!r}")
        try:
            out[k] = int(v)
        except ValueError:
            out[k] = v if v.startswith("(") else CycloScalar.from_text(v)
    return out


@main.command("classify")
@click.option("--model", "name", required=True)
@click.option("--aut", "aut", required=True, help="Registered automorphism name.")
@click.option("--param", "params", multiple=True, help="Automorphism parameter key=value (integers, cycles like (1,2), or scalars like z^9).")
@common
def classify_cmd(name, aut, params, arith, prime, out, jobs):
    """Order, fixed dimension and conjugacy class of a named automorphism."""
    from .models import build_model

    field = _field(arith, prime)
    M = build_model(name)
    f = M.aut(aut, **_parse_params(params)).to_field(field)
    ok_aut = M.algebra.over(field).check_automorphism(f)[0]
    k = order_of(f)
    d = fixed_subspace(f).dim
    try:
        cls = classify(f, bound=max(k, 3))
    except UnclassifiableError as exc:
        cls = None
        click.echo(f"unclassifiable: {exc}")
    click.echo(f"{name}:{aut} automorphism={ok_aut} order={k} fix={d} class={cls}")
    _emit(_report("classify", field, {"model": name, "aut": aut, "params": list(params), "automorphism": ok_aut,
                                      "order": k, "fix": d, "class": cls}, ok_aut and cls is not None), out)
    _finish(ok_aut and cls is not None)


if __name__ == "__main__":
    main()
