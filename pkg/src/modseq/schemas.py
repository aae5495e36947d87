"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field

from .sequences import PeriodicSequence


class SequenceRecord(BaseModel):
    """Wire format of a periodic sequence: one period of residues."""

    modulus: int = Field(ge=2)
    period: list[int]

    @classmethod
    def wrap(cls, f: PeriodicSequence) -> "SequenceRecord":
        return cls(modulus=f.modulus, period=list(f.values))

    def unwrap(self) -> PeriodicSequence:
        return PeriodicSequence(self.modulus, tuple(self.period))


class PeriodRequest(BaseModel):
    sequence: SequenceRecord


class PeriodResponse(BaseModel):
    sequence: SequenceRecord
    tau: int
    trace: int


class GeneratingVectorReport(BaseModel):
    entries: list[int]
    kind: str
    index: int
    leading_index: int | None
    leading_value: int | None


class PartReport(BaseModel):
    p: int
    ell: int
    sequence: SequenceRecord
    kind: str  # idempotent | nilpotent | mixed
    idempotency_index: int
    nilpotency_index: int
    idempotent_part: SequenceRecord
    nilpotent_part: SequenceRecord
    idempotent_vector: GeneratingVectorReport | None = None
    nilpotent_vector: GeneratingVectorReport | None = None


class DecomposeRequest(BaseModel):
    sequence: SequenceRecord


class DecomposeResponse(BaseModel):
    modulus: int
    tau: int
    parts: list[PartReport]


class PredictionReport(BaseModel):
    kind: str
    predicted_period: int
    valid_from: int
    advisory: bool
    leading_index: int | None = None
    leading_value: int | None = None


class PrimitiveRequest(BaseModel):
    sequence: SequenceRecord
    s: int = Field(ge=0)
    seed: int = 0
    cap: int = Field(default=1 << 16, ge=1)


class PrimitiveResponse(BaseModel):
    materialized: SequenceRecord | None = None
    prediction: PredictionReport | None = None
    note: str | None = None


class CrtRequest(BaseModel):
    parts: list[SequenceRecord]


class CrtResponse(BaseModel):
    sequence: SequenceRecord


class PredictPeriodRequest(BaseModel):
    sequence: SequenceRecord
    s: int = Field(ge=0)


class PredictPeriodResponse(BaseModel):
    kind: str
    predicted_period: int
    valid_from: int
    advisory: bool
    components: list[PredictionReport]


class BinomStatsRequest(BaseModel):
    p: int = Field(ge=2)
    ell: int = Field(ge=1)
    s: int = Field(ge=0)
    cap: int = Field(default=1 << 16, ge=1)


class BinomStatsResponse(BaseModel):
    s: int
    digits: str
    period: int
    pi: list[int]
    zeros: int


class ReductionStepReport(BaseModel):
    lemma: str
    m: int
    s: int
    s_prime: int
    operator: str
    scale_exponent: int
    e_size: int | None = None


class BinomReduceRequest(BaseModel):
    p: int = Field(ge=2)
    ell: int = Field(ge=1)
    s: int = Field(ge=0)
    cap: int = Field(default=1 << 20, ge=1)


class BinomReduceResponse(BaseModel):
    s: int
    digits: str
    terminal_s: int
    chain: list[ReductionStepReport]
    period: int
    pi: list[int]
    zeros: int


class VieruZRequest(BaseModel):
    k: int = Field(ge=5)
    verify: bool = False


class VieruZRow(BaseModel):
    s: int
    z: int
    case: str
    oracle: int | None = None
    match: bool | None = None


class VieruZResponse(BaseModel):
    k: int
    rows: list[VieruZRow]
    mismatches: int


class VieruDRequest(BaseModel):
    k: int = Field(ge=5)


class VieruDResponse(BaseModel):
    k: int
    start: int
    closed: list[int]
    recursive: list[int]
    hamming: list[int]
    agree: bool


class VerifyRequest(BaseModel):
    suite: str  # lemmas | periods | structure | vieru
    p: int = 2
    ell: int = 2
    s_max: int = 64
    k_max: int = 7
    samples: int = 100
    seed: int = 1729
    moduli: list[int] = [4, 8, 9, 12]


class FailureReport(BaseModel):
    claim: str
    inputs: dict
    expected: str
    actual: str


class VerifyResponse(BaseModel):
    suite: str
    instances: int
    failures: list[FailureReport]
    seconds: float
    ok: bool


class BenchRequest(BaseModel):
    p: int = 2
    ell: int = 2
    s_start: int = 1 << 10
    s_stop: int = 1 << 11


class BenchResponse(BaseModel):
    s_start: int
    s_stop: int
    direct_seconds: float
    chain_seconds: float
    speedup: float
    all_equal: bool
