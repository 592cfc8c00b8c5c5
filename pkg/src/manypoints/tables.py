"""Interval tables for N_q(g): the embedded reference data, comparison of
constructed curves against it, and csv/markdown/json serialization."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import ParseError, UnknownFormat

DATA_FILE = "paper_tables.csv"
CHECKSUM_FILE = "paper_tables.sha256"
ERRATA_FILE = "errata.csv"
SCHEMA_VERSION = 1
FORMATS = ("csv", "markdown", "json")
INTERVAL_TABLES = ("WirtzTable", "TableP2", "TableP3")
COLUMNS = ["q", "g", "lower", "upper", "provenance"]


@dataclass
class TableEntry:
    q: int
    g: int
    lower: int | None
    upper: int | None
    provenance: str
    witness: dict | None = None

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper} at (q={self.q}, g={self.g})")

    @property
    def key(self) -> tuple[int, int, str]:
        return self.q, self.g, self.provenance

    @property
    def exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def cell(self) -> str:
        """'a' for an exact value, 'a--b', '--b' or 'a--'."""
        if self.exact:
            return str(self.lower)
        lo = "" if self.lower is None else str(self.lower)
        up = "" if self.upper is None else str(self.upper)
        return f"{lo}--{up}"

    def row(self) -> dict:
        return {"q": self.q, "g": self.g, "lower": self.lower, "upper": self.upper,
                "provenance": self.provenance, "witness": self.witness}


def parse_cell(text: str) -> tuple[int | None, int | None]:
    text = text.strip()
    m = re.fullmatch(r"(\d*)\s*-{1,2}\s*(\d*)", text)
    if m and (m.group(1) or m.group(2)):
        lo = int(m.group(1)) if m.group(1) else None
        up = int(m.group(2)) if m.group(2) else None
        return lo, up
    if re.fullmatch(r"\d+", text):
        return int(text), int(text)
    raise ParseError(f"bad table cell {text!r}")


@dataclass
class Table:
    entries: list[TableEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, q: int, g: int, provenance: str) -> TableEntry | None:
        for e in self.entries:
            if e.key == (q, g, provenance):
                return e
        return None

    def at(self, q: int, g: int) -> list[TableEntry]:
        return [e for e in self.entries if e.q == q and e.g == g]

    def select(self, provenance: str | None = None, q: int | None = None, gmax: int | None = None) -> "Table":
        return Table([e for e in self.entries
                      if (provenance is None or e.provenance == provenance)
                      and (q is None or e.q == q)
                      and (gmax is None or e.g <= gmax)])

    def provenances(self) -> list[str]:
        return sorted({e.provenance for e in self.entries})


# -- embedded data ------------------------------------------------------------------


def _data_text(name: str) -> str:
    return resources.files("manypoints").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def load_paper_tables(verify: bool = True) -> Table:
    """The reference tables, keyed by (q, g, provenance)."""
    text = _data_text(DATA_FILE)
    if verify:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        expected = _data_text(CHECKSUM_FILE).strip()
        if digest != expected:
            raise ParseError(f"table data checksum {digest} does not match {expected}")
    return parse(text, "csv")


def load_errata() -> list[dict]:
    return list(csv.DictReader(io.StringIO(_data_text(ERRATA_FILE))))


def consistency_issues(table: Table) -> list[dict]:
    """Cells where two sources disagree: intervals with empty intersection,
    or two transcriptions of the same Wirtz cell that differ."""
    issues = []
    keyed: dict[tuple[int, int], list[TableEntry]] = {}
    for e in table:
        keyed.setdefault((e.q, e.g), []).append(e)
    for (q, g), es in sorted(keyed.items()):
        intervals = [e for e in es if e.provenance in INTERVAL_TABLES or e.provenance.endswith("-Wirtz")]
        for i, a in enumerate(intervals):
            for b in intervals[i + 1 :]:
                lo = max(x for x in (a.lower, b.lower, 0) if x is not None)
                ups = [x for x in (a.upper, b.upper) if x is not None]
                if ups and lo > min(ups):
                    issues.append({"q": q, "g": g, "provenance": f"{a.provenance}|{b.provenance}", "kind": "incompatible"})
        wirtz = next((e for e in es if e.provenance == "WirtzTable"), None)
        for e in es:
            if e.provenance.endswith("-Wirtz") and wirtz and (e.lower, e.upper) != (wirtz.lower, wirtz.upper):
                issues.append({"q": q, "g": g, "provenance": e.provenance, "kind": "wirtz-mismatch"})
    return issues


# -- comparison ------------------------------------------------------------------------


@dataclass
class RegressionRow:
    q: int
    g: int
    count: int
    status: str  # match | improvement | consistent | violation
    optimal: bool
    reference: str
    detail: str = ""


@dataclass
class RegressionReport:
    rows: list[RegressionRow]
    missing: list[TableEntry]

    @property
    def violations(self) -> list[RegressionRow]:
        return [r for r in self.rows if r.status == "violation"]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.missing

    def summary(self) -> dict:
        out: dict[str, int] = {}
        for r in self.rows:
            out[r.status] = out.get(r.status, 0) + 1
        out["optimal"] = sum(r.optimal for r in self.rows)
        out["missing"] = len(self.missing)
        return out


def _as_entry(item) -> TableEntry:
    if isinstance(item, TableEntry):
        return item
    # a ConstructionResult
    if not item.ok:
        raise ValueError("only verified constructions can be compared")
    return TableEntry(item.spec.q, item.genus, item.count, None, "Constructed", item.to_record())


def regression_check(results, table: Table | None = None, expect: list[str] | None = None) -> RegressionReport:
    """Compare constructed curves with the reference rows at the same (q, g).

    A constructed count above any tabulated upper bound is a violation.
    Against example rows the count must equal the tabulated one (match).
    Against interval rows it is an improvement above the lower end, a
    match at it, or consistent below it.  ``expect`` lists example
    provenances whose every row must be reproduced; unreproduced ones are
    reported as missing.
    """
    table = load_paper_tables() if table is None else table
    rows = []
    built = [_as_entry(r) for r in results]
    for c in built:
        refs = table.at(c.q, c.g)
        if not refs:
            rows.append(RegressionRow(c.q, c.g, c.lower, "consistent", False, "-", "no reference row"))
            continue
        for ref in refs:
            optimal = ref.upper is not None and c.lower == ref.upper
            if ref.upper is not None and c.lower > ref.upper:
                status = "violation"
            elif ref.provenance.startswith("Example") and not ref.provenance.endswith("-Wirtz"):
                status = "match" if c.lower == ref.lower else ("improvement" if c.lower > ref.lower else "consistent")
            elif ref.lower is None:
                status = "improvement"
            else:
                status = "match" if c.lower == ref.lower else ("improvement" if c.lower > ref.lower else "consistent")
            rows.append(RegressionRow(c.q, c.g, c.lower, status, optimal, ref.provenance, ref.cell()))
    missing = []
    have = {(c.q, c.g, c.lower) for c in built}
    for prov in expect or []:
        for ref in table.select(provenance=prov):
            if (ref.q, ref.g, ref.lower) not in have:
                missing.append(ref)
    return RegressionReport(rows, missing)


# -- serialization -------------------------------------------------------------------


def render(table: Table, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for e in table:
            w.writerow([e.q, e.g, "" if e.lower is None else e.lower, "" if e.upper is None else e.upper, e.provenance])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps({"version": SCHEMA_VERSION, "entries": [e.row() for e in table]}, indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        blocks = []
        for prov in _ordered_provenances(table):
            es = [e for e in table if e.provenance == prov]
            qs = sorted({e.q for e in es})
            gs = sorted({e.g for e in es})
            cells = {(e.q, e.g): e.cell() for e in es}
            lines = [f"### {prov}", "", "| g\\q | " + " | ".join(map(str, qs)) + " |",
                     "|---" * (len(qs) + 1) + "|"]
            for g in gs:
                lines.append(f"| {g} | " + " | ".join(cells.get((q, g), "") for q in qs) + " |")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + ("\n" if blocks else "")
    raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def _ordered_provenances(table: Table) -> list[str]:
    out: list[str] = []
    for e in table:
        if e.provenance not in out:
            out.append(e.provenance)
    return out


def _int_or_none(text):
    if text is None or text == "":
        return None
    return int(text)


def parse(text: str, fmt: str = "csv") -> Table:
    """Inverse of render.  Markdown keeps only the interval data."""
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is not None and reader.fieldnames != COLUMNS:
            raise ParseError(f"expected columns {COLUMNS}, got {reader.fieldnames}")
        try:
            return Table([TableEntry(int(r["q"]), int(r["g"]), _int_or_none(r["lower"]), _int_or_none(r["upper"]),
                                     r["provenance"]) for r in reader])
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc
    if fmt == "json":
        data = json.loads(text)
        if data.get("version") != SCHEMA_VERSION:
            raise ParseError(f"unsupported schema version {data.get('version')}")
        return Table([TableEntry(d["q"], d["g"], d["lower"], d["upper"], d["provenance"], d.get("witness"))
                      for d in data["entries"]])
    if fmt == "markdown":
        entries: list[TableEntry] = []
        prov, qs = None, []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("### "):
                prov, qs = line[4:].strip(), []
            elif line.startswith("| g\\q"):
                qs = [int(x) for x in line.strip("|").split("|")[1:]]
            elif line.startswith("|---") or not line:
                continue
            elif line.startswith("|"):
                if prov is None or not qs:
                    raise ParseError("table row before its header")
                parts = [x.strip() for x in line.strip("|").split("|")]
                g = int(parts[0])
                for q, c in zip(qs, parts[1:]):
                    if c:
                        lo, up = parse_cell(c)
                        entries.append(TableEntry(q, g, lo, up, prov))
        return Table(entries)
    raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
