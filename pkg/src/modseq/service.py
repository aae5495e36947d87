"""FastAPI service exposing the sequence calculus.

The CLI is a thin client of this app (in-process by default); the endpoints
are the stable programmatic surface.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import binomial, structure, verify, vieru
from .core import ModulusContext, digits
from .errors import ResourceLimitError, UsageError
from .schemas import (
    BenchRequest,
    BenchResponse,
    BinomReduceRequest,
    BinomReduceResponse,
    BinomStatsRequest,
    BinomStatsResponse,
    CrtRequest,
    CrtResponse,
    DecomposeRequest,
    DecomposeResponse,
    FailureReport,
    GeneratingVectorReport,
    PartReport,
    PeriodRequest,
    PeriodResponse,
    PredictionReport,
    PredictPeriodRequest,
    PredictPeriodResponse,
    PrimitiveRequest,
    PrimitiveResponse,
    ReductionStepReport,
    SequenceRecord,
    VerifyRequest,
    VerifyResponse,
    VieruDRequest,
    VieruDResponse,
    VieruZRequest,
    VieruZResponse,
    VieruZRow,
)
from .sequences import PeriodicSequence, crt_combine, primitive

app = FastAPI(title="modseq", description="Periodic sequence calculus over Z_m")


@app.exception_handler(UsageError)
async def _usage_error(_request, exc: UsageError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(ResourceLimitError)
async def _resource_error(_request, exc: ResourceLimitError):
    return JSONResponse(status_code=413, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/seq/period", response_model=PeriodResponse)
def seq_period(req: PeriodRequest) -> PeriodResponse:
    f = req.sequence.unwrap()
    return PeriodResponse(sequence=SequenceRecord.wrap(f), tau=f.period, trace=f.trace())


def _vector_report(f: PeriodicSequence) -> GeneratingVectorReport | None:
    if f.is_zero():
        return None
    gv = structure.generating_vector(f)
    return GeneratingVectorReport(
        entries=list(gv.entries),
        kind=gv.kind.value,
        index=gv.index,
        leading_index=gv.leading_index,
        leading_value=gv.leading_value,
    )


def _part_report(g: PeriodicSequence, p: int, ell: int) -> PartReport:
    res = structure.split(g)
    if res.nilpotent_part.is_zero() and not res.idempotent_part.is_zero():
        kind = "idempotent"
    elif res.idempotent_part.is_zero():
        kind = "nilpotent"
    else:
        kind = "mixed"
    return PartReport(
        p=p,
        ell=ell,
        sequence=SequenceRecord.wrap(g),
        kind=kind,
        idempotency_index=res.idempotency_index,
        nilpotency_index=res.nilpotency_index,
        idempotent_part=SequenceRecord.wrap(res.idempotent_part),
        nilpotent_part=SequenceRecord.wrap(res.nilpotent_part),
        idempotent_vector=_vector_report(res.idempotent_part),
        nilpotent_vector=_vector_report(res.nilpotent_part),
    )


@app.post("/seq/decompose", response_model=DecomposeResponse)
def seq_decompose(req: DecomposeRequest) -> DecomposeResponse:
    f = req.sequence.unwrap()
    ctx = ModulusContext.of(f.modulus)
    parts = [_part_report(f.p_part(p, e), p, e) for p, e in ctx.factorization]
    return DecomposeResponse(modulus=f.modulus, tau=f.period, parts=parts)


def _predict(f: PeriodicSequence, s: int) -> PredictPeriodResponse:
    ctx = ModulusContext.of(f.modulus)
    if ctx.prime_power is None:
        raise UsageError(
            f"modulus {f.modulus} is not a prime power; decompose first and "
            "predict per part"
        )
    res = structure.split(f)
    components: list[PredictionReport] = []
    if not res.nilpotent_part.is_zero():
        pred = structure.predict_period_nilpotent(res.nilpotent_part, s)
        components.append(PredictionReport(
            kind="nilpotent", predicted_period=pred.predicted_period,
            valid_from=pred.valid_from, advisory=pred.advisory,
            leading_index=pred.leading_index, leading_value=pred.leading_value))
    if not res.idempotent_part.is_zero():
        pred = structure.predict_period_idempotent(res.idempotent_part, s)
        components.append(PredictionReport(
            kind="idempotent", predicted_period=pred.predicted_period,
            valid_from=pred.valid_from, advisory=pred.advisory,
            leading_index=pred.leading_index, leading_value=pred.leading_value))
    if not components:
        return PredictPeriodResponse(kind="zero", predicted_period=1, valid_from=0,
                                     advisory=False, components=[])
    if len(components) == 1:
        c = components[0]
        return PredictPeriodResponse(kind=c.kind, predicted_period=c.predicted_period,
                                     valid_from=c.valid_from, advisory=c.advisory,
                                     components=components)
    combined = math.lcm(*(c.predicted_period for c in components))
    valid_from = max(c.valid_from for c in components)
    return PredictPeriodResponse(kind="mixed", predicted_period=combined,
                                 valid_from=valid_from,
                                 advisory=s < valid_from or True,
                                 components=components)


@app.post("/seq/predict-period", response_model=PredictPeriodResponse)
def seq_predict_period(req: PredictPeriodRequest) -> PredictPeriodResponse:
    return _predict(req.sequence.unwrap(), req.s)


@app.post("/seq/primitive", response_model=PrimitiveResponse)
def seq_primitive(req: PrimitiveRequest) -> PrimitiveResponse:
    f = req.sequence.unwrap()
    try:
        g = primitive(f, req.s, cap=req.cap)
        if req.seed:
            g = g.add(PeriodicSequence(f.modulus, (req.seed,)))
        return PrimitiveResponse(materialized=SequenceRecord.wrap(g))
    except ResourceLimitError as exc:
        pred = _predict(f, req.s)
        return PrimitiveResponse(
            prediction=PredictionReport(
                kind=pred.kind, predicted_period=pred.predicted_period,
                valid_from=pred.valid_from, advisory=pred.advisory),
            note=f"{exc}; returning the analytic period prediction instead",
        )


@app.post("/seq/crt", response_model=CrtResponse)
def seq_crt(req: CrtRequest) -> CrtResponse:
    parts = [r.unwrap() for r in req.parts]
    return CrtResponse(sequence=SequenceRecord.wrap(crt_combine(parts)))


@app.post("/binom/stats", response_model=BinomStatsResponse)
def binom_stats(req: BinomStatsRequest) -> BinomStatsResponse:
    ctx = ModulusContext.of_prime_power(req.p, req.ell)
    st = binomial.bin_stats(ctx, req.s, cap=req.cap)
    return BinomStatsResponse(
        s=req.s, digits=str(digits(req.s, req.p)), period=st.period,
        pi=list(st.pi), zeros=st.zeros,
    )


@app.post("/binom/reduce", response_model=BinomReduceResponse)
def binom_reduce(req: BinomReduceRequest) -> BinomReduceResponse:
    ctx = ModulusContext.of_prime_power(req.p, req.ell)
    chain = binomial.reduce_chain(ctx, req.s, cap=req.cap)
    return BinomReduceResponse(
        s=req.s,
        digits=str(digits(req.s, req.p)) if req.s else "0",
        terminal_s=chain.terminal_s,
        chain=[ReductionStepReport(
            lemma=st.lemma.value, m=st.m, s=st.s, s_prime=st.s_prime,
            operator=st.operator, scale_exponent=st.scale_exponent,
            e_size=st.e_size) for st in chain.steps],
        period=chain.stats.period,
        pi=list(chain.stats.pi),
        zeros=chain.stats.zeros,
    )


@app.post("/vieru/z", response_model=VieruZResponse)
def vieru_z(req: VieruZRequest) -> VieruZResponse:
    rows = []
    mismatches = 0
    for s in range(1 << req.k, 1 << (req.k + 1)):
        z = vieru.z_recursive(s)
        case = vieru.case_of(s) if s >= 64 else "base"
        if req.verify:
            oracle = vieru.z_oracle(s)
            ok = oracle == z
            mismatches += 0 if ok else 1
            rows.append(VieruZRow(s=s, z=z, case=case, oracle=oracle, match=ok))
        else:
            rows.append(VieruZRow(s=s, z=z, case=case))
    return VieruZResponse(k=req.k, rows=rows, mismatches=mismatches)


@app.post("/vieru/d", response_model=VieruDResponse)
def vieru_d(req: VieruDRequest) -> VieruDResponse:
    dom = vieru.d_domain(req.k)
    closed = [vieru.d_closed(req.k, s) for s in dom]
    rec = list(vieru.d_recursive(req.k))
    ham = [vieru.d_hamming(req.k, s) for s in dom]
    return VieruDResponse(k=req.k, start=dom.start, closed=closed, recursive=rec,
                          hamming=ham, agree=closed == rec == ham)


@app.post("/verify", response_model=VerifyResponse)
def run_verify(req: VerifyRequest) -> VerifyResponse:
    if req.suite == "lemmas":
        report = verify.verify_reduction_lemmas(req.p, req.ell, req.s_max)
    elif req.suite == "periods":
        report = verify.verify_periods(req.p, req.ell, req.s_max)
    elif req.suite == "structure":
        report = verify.verify_structure(tuple(req.moduli), req.samples, req.seed)
    elif req.suite == "vieru":
        report = verify.verify_vieru(req.k_max)
    else:
        raise HTTPException(status_code=422, detail=f"unknown suite {req.suite!r}")
    return VerifyResponse(
        suite=report.suite, instances=report.instances,
        failures=[FailureReport(**f.to_dict()) for f in report.failures],
        seconds=report.seconds, ok=report.ok,
    )


@app.post("/bench", response_model=BenchResponse)
def run_bench(req: BenchRequest) -> BenchResponse:
    rep = verify.benchmark_reduction(req.p, req.ell, req.s_start, req.s_stop)
    return BenchResponse(**rep.to_dict())
