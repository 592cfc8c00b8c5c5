"""Construction results, their verification, and replayable JSON records."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..curve import FibreProductSpec, fibre_count, fibre_genus, fibre_trace
from ..errors import ManyPointsError
from ..function import parse_function, render_function
from ..gf import parse_field_spec

RECORD_VERSION = 1


@dataclass
class ConstructionResult:
    method: str
    params: dict
    spec: FibreProductSpec
    claimed_genus: int | None
    claimed_count: int | None
    claim_source: str = ""
    verified_genus: int | None = None
    verified_count: int | None = None
    verified_trace: int | None = None
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.verified_count is None:
            return "UNVERIFIED"
        if self.claimed_count is not None and self.claimed_count != self.verified_count:
            return "FAILED"
        if self.claimed_genus is not None and self.claimed_genus != self.verified_genus:
            return "FAILED"
        if self.spec.q + 1 - self.verified_count != self.verified_trace:
            return "FAILED"
        return "VERIFIED"

    @property
    def ok(self) -> bool:
        return self.status == "VERIFIED"

    def verify(self) -> "ConstructionResult":
        """Recount the fibre product and recompute its genus."""
        self.verified_count = fibre_count(self.spec)
        self.verified_trace = fibre_trace(self.spec)
        self.verified_genus = fibre_genus(self.spec)
        return self

    @property
    def genus(self) -> int | None:
        return self.verified_genus if self.verified_genus is not None else self.claimed_genus

    @property
    def count(self) -> int | None:
        return self.verified_count if self.verified_count is not None else self.claimed_count

    def to_record(self) -> dict:
        return {
            "version": RECORD_VERSION,
            "method": self.method,
            "field": str(self.spec.spec),
            "basis": [render_function(f) for f in self.spec.basis],
            "params": _jsonable(self.params),
            "claimed": {"genus": self.claimed_genus, "count": self.claimed_count, "source": self.claim_source},
            "verified": {
                "genus": self.verified_genus,
                "count": self.verified_count,
                "trace": self.verified_trace,
            },
            "status": self.status,
            "seed": self.seed,
            "notes": list(self.notes),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def replay(record: dict) -> ConstructionResult:
    """Rebuild a result from its record and verify it from scratch."""
    tbl = parse_field_spec(record["field"])
    basis = [parse_function(s, tbl) for s in record["basis"]]
    claimed = record.get("claimed", {})
    res = ConstructionResult(
        method=record.get("method", "replay"),
        params=record.get("params", {}),
        spec=FibreProductSpec(tuple(basis)),
        claimed_genus=claimed.get("genus"),
        claimed_count=claimed.get("count"),
        claim_source=claimed.get("source", ""),
        seed=record.get("seed"),
    )
    return res.verify()


def finish(method: str, params: dict, basis, genus: int | None, count: int | None, source: str, **kw) -> ConstructionResult:
    """Assemble and verify a result; a verification crash is kept as a note
    and leaves the result FAILED rather than dropping it."""
    spec = FibreProductSpec(tuple(basis))
    res = ConstructionResult(method, params, spec, genus, count, source, **kw)
    try:
        res.verify()
    except ManyPointsError as exc:
        res.notes.append(f"verification error: {exc}")
        res.verified_count = -1
        res.verified_trace = None
    return res
