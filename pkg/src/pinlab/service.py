"""HTTP service exposing the same operations as the command line.

Run with ``uvicorn pinlab.service:app``.  Bad input answers 422 (validation)
or 400 (inconsistent request); a failed computation answers 500.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import handlers as h
from .expr import ExprSyntaxError

app = FastAPI(title="pinlab", version="0.1.0")

Sig = Field("1,3", pattern=r"^\s*\d+\s*,\s*\d+\s*$")


class RepRequest(BaseModel):
    sig: str = Sig
    rep: Optional[str] = None


class ConstructRequest(BaseModel):
    sig: Optional[str] = Field(None, pattern=r"^\s*\d+\s*,\s*\d+\s*$")
    rep: Optional[str] = None
    extend: Optional[Literal["AddTime", "AddSpace"]] = None
    branch: Literal["PlusK", "MinusK"] = "PlusK"


class ClassifyRequest(BaseModel):
    m: int = Field(ge=0)
    n: int = Field(ge=0)


class CoverRequest(RepRequest):
    table: bool = False
    parity: Optional[Literal["P1", "P3"]] = None
    solve: Optional[list[int]] = None


class ConjRequest(RepRequest):
    what: Literal["C", "H+", "H-", "adjoint", "majorana", "AT", "kramers", "cpt", "parity", "all"] = "all"
    sign: Optional[Literal["Plus", "Minus"]] = None


class TraceRequest(RepRequest):
    labels: list[int] = []


class SpinsumRequest(RepRequest):
    mass: str = "1"
    p: tuple[str, str, str] = ("3/4", "0", "0")
    which: Literal["U", "V"] = "U"


class SigmaRequest(BaseModel):
    hypothesis: Literal["Plus", "Minus"] = "Plus"
    seed: int = 0
    points: int = Field(1, ge=1, le=100)


class PhasesRequest(BaseModel):
    mode: Literal["pion", "positronium", "ledger", "reaction"]
    document: Optional[dict[str, Any]] = None
    l: int = Field(0, ge=0)
    s: Literal[0, 1] = 0
    eta_n: str = "1"
    flags: list[Literal["fermion_pair", "charge_conj_verified", "majorana"]] = []


class KleinRequest(BaseModel):
    pin: Literal["13", "31"] = "13"
    a: float = Field(1.0, gt=0)
    b: float = Field(1.0, gt=0)
    x3: float = 0.3
    N: int = Field(64, ge=1, le=512)
    tolerance: float = Field(1e-8, gt=0)


class EvalRequest(RepRequest):
    expression: str
    exact: bool = True


class Envelope(BaseModel):
    data: Any
    text: str


def _run(fn, *args) -> Envelope:
    try:
        r = fn(*args)
    except (h.UsageError, ExprSyntaxError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"{type(e).__name__}: {e}")
    return Envelope(data=r.data, text=r.text)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/construct", response_model=Envelope)
def construct(req: ConstructRequest):
    return _run(h.construct, req.sig, req.rep, req.extend, req.branch)


@app.post("/classify", response_model=Envelope)
def classify(req: ClassifyRequest):
    return _run(h.classify, req.m, req.n)


@app.post("/cover", response_model=Envelope)
def cover(req: CoverRequest):
    return _run(h.cover, req.sig, req.rep, False, req.table, req.parity, req.solve)


@app.post("/conj", response_model=Envelope)
def conj(req: ConjRequest):
    return _run(h.conj, req.sig, req.rep, req.what, req.sign)


@app.post("/trace", response_model=Envelope)
def trace(req: TraceRequest):
    return _run(h.trace, req.sig, req.rep, req.labels)


@app.post("/spinsum", response_model=Envelope)
def spinsum(req: SpinsumRequest):
    return _run(h.spinsum, req.sig, req.rep, req.mass, list(req.p), req.which)


@app.post("/sigma", response_model=Envelope)
def sigma(req: SigmaRequest):
    return _run(h.sigma, req.hypothesis, req.seed, req.points)


@app.post("/phases", response_model=Envelope)
def phases(req: PhasesRequest):
    return _run(h.phases, req.mode, req.document, req.l, req.s, req.eta_n, req.flags)


@app.post("/klein", response_model=Envelope)
def klein(req: KleinRequest):
    return _run(h.klein, req.pin, req.a, req.b, req.x3, req.N, req.tolerance)


@app.post("/eval", response_model=Envelope)
def evaluate(req: EvalRequest):
    return _run(h.evaluate, req.expression, req.sig, req.rep, req.exact)


@app.get("/tables", response_model=Envelope)
def tables_all():
    return _run(h.tables, None)


@app.get("/tables/{name}", response_model=Envelope)
def tables_one(name: str):
    return _run(h.tables, name)
