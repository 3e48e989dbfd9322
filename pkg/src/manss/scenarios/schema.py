"""The manss-chart/1 scenario file format.

JSON, versioned; load_scenario validates degrees, rule homogeneity and
windowed confluence and reports descriptive errors.  Scenarios round-trip
through dump_scenario byte-identically (sorted keys).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..core.chart import ChartAlgebra, Generator
from ..core.coeffs import Coefficients
from ..core.degrees import Degree, DegreeWindow
from ..e2.closed_forms import E2Presentation, e2_motivic, e2_mur_projective, \
    e2_trivial_action
from ..e2.even_c3 import PiData, tmf2_pi_data
from ..e2.ext_chart import ExtChart


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    data: dict

    @property
    def name(self) -> str:
        return self.data["name"]

    @property
    def group(self) -> str:
        return self.data["group"]

    @property
    def case(self) -> str:
        return self.data["case"]

    @property
    def coeffs(self) -> Coefficients:
        return Coefficients(self.data["prime"], self.data["precision"])

    @property
    def r_final(self) -> int:
        return self.data["r_final"]

    def golden_window(self) -> DegreeWindow:
        g = self.data["golden_window"]
        return DegreeWindow(g["f"][0], g["f"][1], g["stem"][0], g["stem"][1],
                            g["twist"][0], g["twist"][1])

    # -- chart construction --------------------------------------------------

    def ext_chart(self) -> Optional[ExtChart]:
        blk = self.data.get("ext_chart")
        if not blk:
            return None
        c = self.coeffs
        gens = [_generator_from(g) for g in blk["generators"]]
        chart = ChartAlgebra("triv", c, gens)
        diffs = {}
        for page, table in blk.get("differentials", {}).items():
            diffs[int(page)] = {name: chart.parse_poly(poly)
                                for name, poly in table.items()}
        return ExtChart(chart, a2_generators=tuple(blk.get("a2_generators", ())),
                        differentials=diffs)

    def presentation(self) -> E2Presentation:
        case = self.case
        if case in ("trivial-action", "motivic"):
            A = self.ext_chart()
            rel = [tuple(r) for r in self.data.get("relations", [])]
            return (e2_trivial_action if case == "trivial-action"
                    else e2_motivic)(A, rel)
        if case == "mur-projective":
            A = self.ext_chart()
            rel = [tuple(r) for r in self.data.get("relations", [])]
            return e2_mur_projective(A, rel)
        if case == "even-homotopy-c3":
            blk = self.data["presentation"]
            c = self.coeffs
            gens = [_generator_from(g) for g in blk["generators"]]
            tmp = ChartAlgebra(self.data["grading"], c, gens)
            zero = [tmp.parse_monomial(z) for z in blk.get("zero_rules", [])]
            rules = [(tmp.parse_monomial(l), tmp.parse_poly(r))
                     for l, r in blk.get("rewrite_rules", [])]
            chart = ChartAlgebra(self.data["grading"], c, gens,
                                 zero_rules=zero, rewrite_rules=rules)
            return E2Presentation(chart, case, None,
                                  {g.name: ("pi",) for g in gens})
        raise ScenarioError(f"unknown case {case}")

    def pi_data(self) -> Optional[PiData]:
        blk = self.data.get("pi_data")
        if not blk:
            return None
        return tmf2_pi_data(blk.get("max_degree", 240))

    def seeds(self) -> List[dict]:
        return self.data.get("seeds", [])

    def permanent_classes(self) -> List[Tuple[str, str]]:
        return [tuple(x) for x in self.data.get("permanent_classes", [])]

    # -- validation ----------------------------------------------------------

    def validate(self):
        pres = self.presentation()
        chart = pres.chart
        w = self.golden_window()
        fails = chart.check_local_confluence(
            DegreeWindow(0, min(w.f_max, 12), w.stem_min, w.stem_max,
                         w.twist_min, w.twist_max))
        if fails:
            raise ScenarioError("rewrite rules not confluent: " + "; ".join(fails))
        from ..core.degrees import differential_shift
        for seed in self.seeds():
            src = chart.parse_monomial(seed["source"])
            tgt = chart.parse_poly(seed["target"])
            r = seed["page"]
            sd = chart.effective_degree(src)
            want = Degree(sd.filtration + r, sd.stem - 1, sd.twist, sd.spoke,
                          sd.weight)
            for m in tgt:
                got = chart.effective_degree(m)
                if got != want:
                    raise ScenarioError(
                        f"seed d_{r}({seed['source']}) = {seed['target']} is "
                        f"not degree-correct: term at {got}, expected {want}")
            if seed.get("justification") not in (
                    "hurewicz-permanent", "restriction-to-ANSS", "ahss-mod-tau",
                    "hfpss-import", "leibniz-derived", "user-hypothesis"):
                raise ScenarioError(
                    f"seed has unknown justification {seed.get('justification')!r}")
        return pres


def _generator_from(g: dict) -> Generator:
    return Generator(g["name"],
                     Degree(g["filtration"], g["stem"], g.get("twist", 0),
                            g.get("spoke", 0), g.get("weight", 0)),
                     torsion=g.get("torsion", 0),
                     invertible=g.get("invertible", False),
                     single_use=g.get("single_use", False))


def load_scenario(source) -> Scenario:
    """Load and validate a scenario from a path, JSON text, or dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if "{" not in text.split("\n", 1)[0][:200]:
            p = Path(source)
            if p.exists():
                text = p.read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"line {e.lineno}, column {e.colno}: {e.msg}")
    if data.get("format") != "manss-chart/1":
        raise ScenarioError("not a manss-chart/1 file")
    sc = Scenario(data)
    sc.validate()
    return sc


def dump_scenario(sc: Scenario) -> str:
    return json.dumps(sc.data, indent=1, sort_keys=True) + "\n"
