"""The two shipped scenarios: real K-theory at C_2 and the level-3 example.

Numeric rule coefficients for the C_3 chart were computed from the exact
lattice model of the invariant rows (see the test oracle) and are frozen
here; the additive acceptance suite re-derives every slot independently.
"""
from __future__ import annotations

from typing import Dict, List, Optional

from ..core.chart import ChartAlgebra, Generator
from ..core.coeffs import Coefficients, env_precision
from ..core.degrees import Degree, DegreeWindow
from ..e2.closed_forms import E2Presentation, e2_motivic, e2_mur_projective, \
    e2_trivial_action
from ..e2.even_c3 import PiData, tmf2_pi_data
from ..e2.ext_chart import ExtChart, ko_ext_chart

HALF = None  # computed per precision


def _half(c: Coefficients) -> int:
    return pow(2, -1, c.modulus)


KO_RELATIONS = [("uh1^2", "u2 h1^2 + a^2 v1sq")]
KO_BAR_RELATIONS = [("uh1b^2", "u2 h1b^2 + a^2 v1sqb")]


def ko_scenario_data(precision: Optional[int] = None) -> dict:
    prec = precision if precision is not None else env_precision()
    return {
        "format": "manss-chart/1",
        "name": "ko-C2",
        "group": "C2",
        "prime": 2,
        "precision": prec,
        "grading": "C2",
        "case": "trivial-action",
        "ext_chart": {
            "generators": [
                {"name": "h1", "filtration": 1, "stem": 1, "twist": 0,
                 "spoke": 0, "weight": 0, "torsion": 1},
                {"name": "v1sq", "filtration": 0, "stem": 4, "twist": 0,
                 "spoke": 0, "weight": 0, "torsion": 0},
            ],
            "zero_rules": [],
            "rewrite_rules": [],
            "a2_generators": ["h1"],
            "differentials": {"3": {"h1": "0", "v1sq": "h1^3"}},
        },
        "relations": KO_RELATIONS,
        "bar_relations": KO_BAR_RELATIONS,
        "attaching_tables": {"rule": "eta-parity", "element": "h1"},
        "restriction_images": {"u2": "1", "a": "0", "h1": "h1",
                               "v1sq": "v1sq", "uh1": "h1"},
        "permanent_classes": [["a", "hurewicz-permanent"],
                              ["h1", "hurewicz-permanent"]],
        "seeds": [
            {"page": 3, "source": "v1sq", "target": "h1^3",
             "justification": "restriction-to-ANSS"},
            {"page": 3, "source": "u2", "target": "a^2 h1",
             "justification": "hfpss-import"},
            {"page": 3, "source": "uh1", "target": "u2^-1 a^2 h1 uh1",
             "justification": "ahss-mod-tau"},
            {"page": 3, "source": "h1", "target": "0",
             "justification": "ahss-mod-tau"},
        ],
        "r_final": 4,
        "golden_window": {"f": [0, 24], "stem": [-20, 20], "twist": [-10, 10]},
        "golden": [],
    }


# frozen coefficients of the level-3 chart rules (prime 3): the fractions
# 1/2, -1/2, -3/2 reduced at each working precision
def tmf2_rules(c: Coefficients):
    half = _half(c)
    M = c.modulus
    mhalf = M - half          # -1/2
    m3half = (3 * mhalf) % M  # -3/2
    return [
        ("c4^3", f"c6^2 + {M - 3}*c6 Dh + 9*Dh^2"),
        ("v1b v1bp", f"{mhalf}*ul^-3 c4"),
        ("v1b w4", f"{m3half}*ul^-2 Dh"),
        ("v1b w4p", f"{half}*ul^-2 c6"),
        ("v1b w6p", f"{mhalf}*ul^-2 c4^2"),
        ("c4 v1b", f"{M - 1}*ul^-1 w6"),
        ("c4 v1bp", f"{M - 1}*ul^-1 w6 + ul^-1 w6p"),
        ("c6 v1b", "6*Dh v1b + " + f"{M - 3}*Dh v1bp + ul^-1 c4 w4"),
        ("c6 v1bp", "9*Dh v1b + " + f"{M - 3}*Dh v1bp + ul^-1 c4 w4 + "
         + f"{M - 1}*ul^-1 c4 w4p"),
        ("c4 w6", f"{M - 1}*c6 w4 + {M - 3}*Dh w4p"),
        ("c4 w6p", f"3*Dh w4 + {M - 1}*c6 w4p + 3*Dh w4p"),
        ("c6 w6", f"{M - 1}*c4^2 w4 + 3*Dh w6 + 3*Dh w6p"),
        ("c6 w6p", f"{M - 1}*c4^2 w4p + {M - 3}*Dh w6"),
    ]


TMF2_ZERO_RULES = [
    "asp c4", "asp c6", "asp v1bp", "asp w4", "asp w4p", "asp w6", "asp w6p",
    "v1b^2", "v1bp^2", "v1b w6",
]


def tmf2_chart(precision: Optional[int] = None) -> ChartAlgebra:
    prec = precision if precision is not None else env_precision()
    c = Coefficients(3, prec)
    gens = [
        Generator("ul", Degree(0, 2, -1, 0), invertible=True),
        Generator("asp", Degree(1, 0, -1, 1), torsion=1),
        Generator("c4", Degree(0, 8, 0, 0)),
        Generator("c6", Degree(0, 12, 0, 0)),
        Generator("Dh", Degree(0, 12, 0, 0)),
        Generator("v1b", Degree(0, 1, 1, 1), single_use=True),
        Generator("v1bp", Degree(0, 1, 1, 1), single_use=True),
        Generator("w4", Degree(0, 7, 0, 1), single_use=True),
        Generator("w4p", Degree(0, 7, 0, 1), single_use=True),
        Generator("w6", Degree(0, 11, 0, 1), single_use=True),
        Generator("w6p", Degree(0, 11, 0, 1), single_use=True),
    ]
    tmp = ChartAlgebra("C3", c, gens)
    zero = [tmp.parse_monomial(z) for z in TMF2_ZERO_RULES]
    rules = [(tmp.parse_monomial(l), tmp.parse_poly(r)) for l, r in tmf2_rules(c)]
    return ChartAlgebra("C3", c, gens, zero_rules=zero, rewrite_rules=rules)


def tmf2_scenario_data(precision: Optional[int] = None) -> dict:
    prec = precision if precision is not None else env_precision()
    c = Coefficients(3, prec)
    return {
        "format": "manss-chart/1",
        "name": "tmf2-C3",
        "group": "C3",
        "prime": 3,
        "precision": prec,
        "grading": "C3",
        "case": "even-homotopy-c3",
        "pi_data": {"max_degree": 240},
        "presentation": {
            "generators": [
                {"name": "ul", "filtration": 0, "stem": 2, "twist": -1,
                 "spoke": 0, "weight": 0, "torsion": 0, "invertible": True},
                {"name": "asp", "filtration": 1, "stem": 0, "twist": -1,
                 "spoke": 1, "weight": 0, "torsion": 1},
                {"name": "c4", "filtration": 0, "stem": 8, "twist": 0,
                 "spoke": 0, "weight": 0, "torsion": 0},
                {"name": "c6", "filtration": 0, "stem": 12, "twist": 0,
                 "spoke": 0, "weight": 0, "torsion": 0},
                {"name": "Dh", "filtration": 0, "stem": 12, "twist": 0,
                 "spoke": 0, "weight": 0, "torsion": 0},
                {"name": "v1b", "filtration": 0, "stem": 1, "twist": 1,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
                {"name": "v1bp", "filtration": 0, "stem": 1, "twist": 1,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
                {"name": "w4", "filtration": 0, "stem": 7, "twist": 0,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
                {"name": "w4p", "filtration": 0, "stem": 7, "twist": 0,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
                {"name": "w6", "filtration": 0, "stem": 11, "twist": 0,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
                {"name": "w6p", "filtration": 0, "stem": 11, "twist": 0,
                 "spoke": 1, "weight": 0, "torsion": 0, "single_use": True},
            ],
            "zero_rules": list(TMF2_ZERO_RULES),
            "rewrite_rules": [[l, r] for l, r in tmf2_rules(c)],
        },
        "sigma3_metadata": {
            "gamma": {"e1": "e2", "e2": "-e1-e2"},
            "mu": {"e1": "-e2", "e2": "-e1"},
            "half_delta": "4 e1 e2 (e1 + e2)",
            "norm_class": "-4 N(e1)",
        },
        "permanent_classes": [
            ["asp", "hurewicz-permanent"],
            ["v1b", "hurewicz-permanent"],
            ["v1bp", "hfpss-import"],
            ["ul^-4 Dh", "hurewicz-permanent"],
            ["c4", "hurewicz-permanent"],
            ["c6", "hurewicz-permanent"],
            ["w4", "hfpss-import"], ["w4p", "hfpss-import"],
            ["w6", "hfpss-import"], ["w6p", "hfpss-import"],
        ],
        "seeds": [
            {"page": 5, "source": "ul", "target": "asp^5 v1b",
             "justification": "hfpss-import"},
            {"page": 9, "source": "ul^2 v1b", "target": "asp^9 ul^-4 Dh",
             "justification": "hfpss-import"},
        ],
        "restriction_images": {},
        "attaching_tables": {},
        "r_final": 10,
        "golden_window": {"f": [0, 12], "stem": [-24, 48], "twist": [-6, 6]},
        "golden": [],
    }


def ko_presentations(precision: Optional[int] = None):
    prec = precision if precision is not None else env_precision()
    A = ko_ext_chart(Coefficients(2, prec))
    triv = e2_trivial_action(A, KO_RELATIONS)
    bar = e2_mur_projective(A, KO_BAR_RELATIONS)
    mot = e2_motivic(A, KO_RELATIONS)
    return A, triv, bar, mot
