"""Command line surface: validate, e2, run, oracle, fc, serve."""
from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from ..core.coeffs import env_precision
from ..core.degrees import Degree, DegreeWindow
from ..e2.oracle import BruteTotal
from ..engine.deduction import run_deduction_script, surviving_cells
from ..engine.page import Page
from ..filtered import textio
from ..filtered.complexes import random_filtered_complex
from ..filtered.convolution import associated_graded, day_convolution
from ..filtered.decalage import decalage, verify_page_shift
from ..filtered.leibniz import d1_leibniz_check
from ..filtered.pages import ss_pages
from .builtin import ko_scenario_data, tmf2_scenario_data
from .charts import emit_chart
from .schema import Scenario, ScenarioError, dump_scenario, load_scenario


def _load(path: str) -> Scenario:
    if path == "ko":
        return Scenario(ko_scenario_data(env_precision()))
    if path == "tmf2":
        return Scenario(tmf2_scenario_data(env_precision()))
    return load_scenario(path)


@click.group()
def main():
    """Borel-complete Adams chart workbench."""


@main.command()
@click.argument("path")
def validate(path):
    """Validate a scenario file (degrees, confluence, seed bookkeeping)."""
    try:
        sc = _load(path)
        if path not in ("ko", "tmf2"):
            sc.validate()
        else:
            sc.validate()
    except ScenarioError as e:
        click.echo(f"INVALID: {e}")
        sys.exit(1)
    click.echo(f"OK: {sc.name} ({sc.case}, group {sc.group})")


@main.command()
@click.argument("path")
@click.option("--window", default="0,8,-8,8", help="f0,f1,stem0,stem1")
@click.option("--twist", default=0, type=int)
@click.option("--case", "case", default=None,
              type=click.Choice(["trivial-action", "mur-projective", "motivic"]),
              help="override the scenario's presentation shape")
def e2(path, window, twist, case):
    """Print the E2 groups of a scenario over a window at one twist."""
    sc = _load(path)
    if case and case != sc.case:
        from ..e2.closed_forms import (e2_motivic, e2_mur_projective,
                                       e2_trivial_action)
        A = sc.ext_chart()
        if A is None:
            raise click.UsageError("case overrides need an Ext-chart scenario")
        rel = [tuple(r) for r in sc.data.get("relations", [])]
        if case == "mur-projective":
            bar_rel = [tuple(r) for r in sc.data.get("bar_relations", [])]
            pres = e2_mur_projective(A, bar_rel)
        elif case == "motivic":
            pres = e2_motivic(A, rel)
        else:
            pres = e2_trivial_action(A, rel)
    else:
        pres = sc.presentation()
    f0, f1, s0, s1 = (int(x) for x in window.split(","))
    w = DegreeWindow(f0, f1, s0, s1, twist - 1, twist + 1)
    page = Page(pres.chart, 2, w)
    click.echo(emit_chart(page, "table", twist, w), nl=False)


@main.command()
@click.argument("path")
@click.option("--to-page", "to_page", default=None, type=int)
@click.option("--emit", "fmt", default="table",
              type=click.Choice(["svg", "table", "json"]))
@click.option("--twist", default=0, type=int)
@click.option("--window", default=None, help="f0,f1,stem0,stem1")
@click.option("--out", default=None, type=click.Path())
def run(path, to_page, fmt, twist, window, out):
    """Run a scenario's deduction script and emit the resulting chart."""
    sc = _load(path)
    pres = sc.presentation()
    if window:
        f0, f1, s0, s1 = (int(x) for x in window.split(","))
        w = DegreeWindow(f0, f1, s0, s1, min(twist, -4), max(twist, 4))
    else:
        w = DegreeWindow(0, 12, -10, 10, min(twist - 1, -4), max(twist + 1, 4))
    res = run_deduction_script(pres, sc, window=w)
    r = to_page or sc.r_final
    page = res.pages.get(r, res.final)
    doc = emit_chart(page, fmt, twist, w)
    if out:
        Path(out).write_text(doc)
        click.echo(f"wrote {out}")
    else:
        click.echo(doc, nl=False)
    if res.collapse:
        click.echo(f"# {len(res.collapse)} unresolved differential candidates",
                   err=True)
    else:
        click.echo(f"# collapse certified in window at page {page.r}", err=True)


@main.command()
@click.argument("kind", type=click.Choice(["dcss", "kunneth", "pageshift"]))
@click.option("--trials", default=20, type=int)
@click.option("--seed", default=0, type=int)
def oracle(kind, trials, seed):
    """Randomized cross-checks against the brute-force oracles."""
    rng = random.Random(seed)
    if kind == "pageshift":
        for t in range(trials):
            fc = random_filtered_complex(rng, 6, 4, 3)
            P = ss_pages(fc)
            DP = ss_pages(decalage(fc))
            for r in range(1, P.r_collapse + 1):
                rep = verify_page_shift(fc, r, P, DP)
                if not rep.ok:
                    click.echo(f"FAIL at trial {t}, r={r}: {rep.mismatches[:3]}")
                    sys.exit(1)
        click.echo(f"pageshift: {trials} trials OK")
        return
    if kind == "kunneth":
        from ..e2.ext_chart import ko_ext_chart
        from .builtin import KO_RELATIONS
        from ..e2.closed_forms import e2_trivial_action
        A = ko_ext_chart()
        pres = e2_trivial_action(A, KO_RELATIONS)
        for t in range(trials):
            j = rng.randint(-6, 6)
            f = rng.randint(0, 8)
            stem = rng.randint(-8, 8)
            bt = BruteTotal(A, j, f_max=f + 2)
            got = pres.chart.bidegree_basis(Degree(f, stem, j)).order_multiset()
            got = tuple(sorted(0 if A.coeffs.is_free(o) else o for o in got))
            want = tuple(sorted(0 if A.coeffs.is_free(o) else o
                                for o in bt.slot(f, stem).orders))
            if got != want:
                click.echo(f"FAIL at (f={f}, stem={stem}, j={j}): {got} != {want}")
                sys.exit(1)
        click.echo(f"kunneth: {trials} slots OK")
        return
    if kind == "dcss":
        from ..e2.dcss import DcssIOracle, dcss_ii_slot
        from ..e2.ext_chart import ko_ext_chart
        A = ko_ext_chart()
        oracle1 = DcssIOracle(A, 8)
        for t in range(trials):
            stem = rng.randint(-5, 5)
            twist = rng.randint(-4, 4)
            f = rng.randint(0, 6)
            tot1, tot2 = [], []
            for a in range(0, f + 1):
                tot1 += list(oracle1.slot(a, f - a, stem, twist).orders)
                tot2 += list(dcss_ii_slot(A, a, f - a, stem, twist).orders)
            if sorted(tot1) != sorted(tot2):
                click.echo(f"FAIL at (f={f}, stem={stem}, twist={twist})")
                sys.exit(1)
        click.echo(f"dcss: {trials} totals OK")


@main.group()
def fc():
    """Filtered-complex utilities on the plain-text matrix-list format."""


@fc.command("gr")
@click.argument("path", type=click.Path(exists=True))
def fc_gr(path):
    fcx = textio.loads(Path(path).read_text())
    for (f, m), g in sorted(associated_graded(fcx).items()):
        click.echo(f"Gr^{f} H-degree {m}: {g}")


@fc.command("pages")
@click.argument("path", type=click.Path(exists=True))
@click.option("--r", "r", default=None, type=int)
def fc_pages(path, r):
    fcx = textio.loads(Path(path).read_text())
    P = ss_pages(fcx)
    rr = r if r is not None else P.r_collapse
    for (f, n), g in sorted(P.page(rr).items()):
        click.echo(f"E_{rr}^({f},{n}) = {g}")


@fc.command("decalage")
@click.argument("path", type=click.Path(exists=True))
def fc_decalage(path):
    fcx = textio.loads(Path(path).read_text())
    click.echo(textio.dumps(decalage(fcx)), nl=False)


@fc.command("pageshift")
@click.argument("path", type=click.Path(exists=True))
@click.option("--r", default=1, type=int)
def fc_pageshift(path, r):
    fcx = textio.loads(Path(path).read_text())
    rep = verify_page_shift(fcx, r)
    click.echo("OK" if rep.ok else f"MISMATCH: {rep.mismatches}")
    if not rep.ok:
        sys.exit(1)


@fc.command("convolve")
@click.argument("path1", type=click.Path(exists=True))
@click.argument("path2", type=click.Path(exists=True))
def fc_convolve(path1, path2):
    a = textio.loads(Path(path1).read_text())
    b = textio.loads(Path(path2).read_text())
    click.echo(textio.dumps(day_convolution(a, b)), nl=False)


@fc.command("leibniz")
@click.argument("path1", type=click.Path(exists=True))
@click.argument("path2", type=click.Path(exists=True))
def fc_leibniz(path1, path2):
    a = textio.loads(Path(path1).read_text())
    b = textio.loads(Path(path2).read_text())
    rep = d1_leibniz_check(a, b)
    click.echo(f"{'OK' if rep else 'FAIL'} ({rep.checked} tensors)")
    if not rep:
        sys.exit(1)


@main.command()
@click.option("--port", default=8642, type=int)
@click.option("--host", default="127.0.0.1")
def serve(port, host):
    """Start the local workbench service."""
    from .service import serve as _serve
    click.echo(f"serving on http://{host}:{port}")
    _serve(port=port, host=host)


if __name__ == "__main__":
    main()
