"""Local workbench service.

Sessions fork a scenario's deduction state; proposals are validated by the
engine, committed with a checkpoint, and undone by name.  Reads are
concurrent; mutations are serialized per session.
"""
from __future__ import annotations

import itertools
import json
import threading
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from ..core.degrees import Degree, DegreeWindow
from ..engine.page import Contradiction, Page, Rejection
from .builtin import ko_scenario_data, tmf2_scenario_data
from .charts import page_slice, slice_arrows
from .schema import Scenario, load_scenario


class ProposeBody(BaseModel):
    page: int
    source: str
    target: str
    justification: str = "user-hypothesis"


class UndoBody(BaseModel):
    checkpoint: str


class Session:
    def __init__(self, sid: str, scenario: Scenario, window: DegreeWindow):
        self.sid = sid
        self.scenario = scenario
        self.window = window
        self.lock = threading.Lock()
        pres = scenario.presentation()
        base = Page(pres.chart, 2, window)
        base.populate(window, pad_f=scenario.r_final + 2)
        self.pages: List[Page] = [base]
        self.checkpoints: List[dict] = [{"name": "start", "depth": 1, "page": 2}]
        self._register_permanents()

    @property
    def page(self) -> Page:
        return self.pages[-1]

    def _register_permanents(self):
        chart = self.page.chart
        for mono_s, just in self.scenario.permanent_classes():
            try:
                self.page.register(chart.parse_monomial(mono_s), {}, just,
                                   ("declared permanent",))
            except Rejection:
                pass

    def advance_to(self, r: int):
        while self.page.r < r:
            self.pages.append(self.page.turn())
            self._register_permanents()

    def propose(self, body: ProposeBody) -> dict:
        chart = self.page.chart
        self.advance_to(body.page)
        if self.page.r != body.page:
            raise Rejection("wrong-degree",
                            f"session is past page {body.page}")
        before = len(self.page.audit)
        fact = self.page.register(chart.parse_monomial(body.source),
                                  chart.parse_poly(body.target),
                                  body.justification)
        derived = self.page.leibniz_close(_check_window(self.window), strict=False)
        consequences = [{
            "page": d.page,
            "source": chart.format_monomial(d.source),
            "target": chart.format_poly(d.target),
            "justification": d.justification,
        } for d in derived]
        name = f"cp{len(self.checkpoints)}"
        self.checkpoints.append({"name": name, "depth": len(self.pages),
                                 "page": self.page.r,
                                 "facts": len(self.page.facts)})
        return {"accepted": True, "checkpoint": name,
                "registered": {
                    "page": fact.page,
                    "source": chart.format_monomial(fact.source),
                    "target": chart.format_poly(fact.target),
                    "justification": fact.justification,
                },
                "consequences": consequences}

    def undo(self, name: str) -> dict:
        for cp in self.checkpoints:
            if cp["name"] == name:
                self.pages = self.pages[:cp["depth"]]
                page = self.page
                if "facts" in cp:
                    drop = page.facts[cp["facts"]:]
                    for fact in drop:
                        page._fact_map.pop(fact.source, None)
                    page.facts = page.facts[:cp["facts"]]
                    page.audit = [e for e in page.audit][:len(page.audit) - len(drop)]
                    page._dvalue_memo.clear()
                self.checkpoints = self.checkpoints[
                    :self.checkpoints.index(cp) + 1]
                return {"undone_to": name, "page": self.page.r}
        raise KeyError(name)

    def audit(self) -> List[dict]:
        # forced-zero bookkeeping is derived lazily and not part of the
        # replayable proposal log
        return [e for e in self.page.audit
                if e["justification"] != "forced-zero"]


def _check_window(w: DegreeWindow) -> DegreeWindow:
    return DegreeWindow(0, min(w.f_max, 10), max(w.stem_min, -8),
                        min(w.stem_max, 8), max(w.twist_min, -5),
                        min(w.twist_max, 5))


def create_app(extra_scenarios: Optional[Dict[str, dict]] = None) -> FastAPI:
    app = FastAPI(title="manss workbench")
    scenarios: Dict[str, Scenario] = {}
    for data in (ko_scenario_data(), tmf2_scenario_data()):
        scenarios[data["name"]] = Scenario(data)
    for name, data in (extra_scenarios or {}).items():
        scenarios[name] = load_scenario(data)
    sessions: Dict[str, Session] = {}
    counter = itertools.count(1)
    create_lock = threading.Lock()

    @app.get("/scenarios")
    def list_scenarios():
        return {"scenarios": sorted(scenarios)}

    @app.post("/sessions")
    def create_session(body: dict):
        name = body.get("scenario")
        if name not in scenarios:
            raise HTTPException(404, detail=f"unknown scenario {name!r}")
        w = body.get("window", {})
        window = DegreeWindow(
            w.get("f_min", 0), w.get("f_max", 12),
            w.get("stem_min", -10), w.get("stem_max", 10),
            w.get("twist_min", -6), w.get("twist_max", 6))
        with create_lock:
            sid = f"s{next(counter)}"
            sessions[sid] = Session(sid, scenarios[name], window)
        return {"session": sid, "page": 2}

    def _session(sid: str) -> Session:
        if sid not in sessions:
            raise HTTPException(404, detail=f"unknown session {sid!r}")
        return sessions[sid]

    @app.get("/sessions/{sid}/page")
    def page_view(sid: str, r: int, twist: int = 0,
                  stem_min: int = -8, stem_max: int = 8,
                  f_min: int = 0, f_max: int = 10):
        from ..engine.page import EngineError
        s = _session(sid)
        with s.lock:
            try:
                s.advance_to(r)
                for p in s.pages:
                    if p.r == r:
                        window = DegreeWindow(f_min, f_max, stem_min, stem_max,
                                              twist - 1, twist + 1)
                        cells = page_slice(p, twist, window)
                        return {
                            "page": r, "twist": twist,
                            "cells": [{"stem": k[0], "filtration": k[1], **v}
                                      for k, v in sorted(cells.items())],
                            "arrows": slice_arrows(p, twist, window),
                        }
            except EngineError as e:
                # turning needs every in-range differential to be determined
                raise HTTPException(
                    422, detail={"reason": "underdetermined", "detail": str(e)})
        raise HTTPException(422, detail="page not materialized")

    @app.post("/sessions/{sid}/propose")
    def propose(sid: str, body: ProposeBody):
        s = _session(sid)
        with s.lock:
            try:
                return s.propose(body)
            except Rejection as e:
                raise HTTPException(422, detail={"reason": e.reason,
                                                 "detail": e.detail})
            except Contradiction as e:
                raise HTTPException(
                    422, detail={"reason": "contradiction",
                                 "chains": [e.chain_a, e.chain_b]})

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str, body: UndoBody):
        s = _session(sid)
        with s.lock:
            try:
                return s.undo(body.checkpoint)
            except KeyError:
                raise HTTPException(404, detail="unknown checkpoint")

    @app.get("/sessions/{sid}/audit")
    def audit(sid: str):
        s = _session(sid)
        return {"audit": s.audit(),
                "checkpoints": [c["name"] for c in s.checkpoints]}

    return app


def serve(port: int = 8642, host: str = "127.0.0.1"):
    import uvicorn
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
