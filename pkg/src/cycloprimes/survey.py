"""Survey of m <= 2^k: classify phi_m, psi_m and the Aurifeuillian psi halves.

Results stream out one :class:`ResultRecord` per m, in ascending m, and can be
persisted to an append-only JSON-lines store so an interrupted survey resumes
where it stopped.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Iterable, Iterator, Optional

from .cyclotomic import cyclotomic_record
from .errors import DomainError, StoreError
from .primality import DEFAULT_CONFIG, PipelineConfig, Tag, classify

log = logging.getLogger(__name__)

K_MAX_LIMIT = 17
TABLE_COLUMNS = ("k", "phi_prime", "psi_prime", "psi_plus_prime", "psi_minus_prime")
APPENDIX_LISTS = ("phi_prime", "psi_lt_phi_prime", "psi_plus_prime", "psi_minus_prime")


@dataclass(frozen=True)
class SurveyRow:
    k: int
    count_phi_prime: int
    count_psi_prime: int
    count_psi_plus_prime: int
    count_psi_minus_prime: int

    def as_tuple(self):
        return (self.count_phi_prime, self.count_psi_prime,
                self.count_psi_plus_prime, self.count_psi_minus_prime)

    def as_dict(self):
        return dict(zip(TABLE_COLUMNS, (self.k,) + self.as_tuple()))


@dataclass(frozen=True)
class ResultRecord:
    m: int
    phi_bits: int
    delta: int
    class_phi: Tag
    class_psi: Tag
    class_psi_plus: Optional[Tag] = None
    class_psi_minus: Optional[Tag] = None
    witness: Optional[int] = None
    elapsed_ms: int = field(default=0, compare=False)

    def to_json(self) -> str:
        d = asdict(self)
        for key in ("class_phi", "class_psi", "class_psi_plus", "class_psi_minus"):
            if d[key] is not None:
                d[key] = d[key].value
        if d["witness"] is not None:
            d["witness"] = str(d["witness"])
        return json.dumps(d, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        d = json.loads(line)
        if not isinstance(d, dict):
            raise ValueError("record is not an object")
        opt = lambda v: None if v is None else Tag(v)  # noqa: E731
        return cls(
            m=int(d["m"]),
            phi_bits=int(d["phi_bits"]),
            delta=int(d["delta"]),
            class_phi=Tag(d["class_phi"]),
            class_psi=Tag(d["class_psi"]),
            class_psi_plus=opt(d.get("class_psi_plus")),
            class_psi_minus=opt(d.get("class_psi_minus")),
            witness=None if d.get("witness") is None else int(d["witness"]),
            elapsed_ms=int(d.get("elapsed_ms", 0)),
        )


def survey_one(m: int, config: PipelineConfig = DEFAULT_CONFIG) -> ResultRecord:
    """Build the cyclotomic record for m and classify every piece of it."""
    start = time.perf_counter()
    rec = cyclotomic_record(m)
    c_phi = classify(rec.phi, m, config)
    c_psi = c_phi if rec.delta == 1 else classify(rec.psi, m, config)
    plus = minus = None
    if rec.split is not None:
        halves = []
        for h in (rec.split.psi_plus, rec.split.psi_minus):
            if h == rec.psi:
                halves.append(c_psi.tag)
            else:
                halves.append(classify(h, m, config).tag)
        plus, minus = halves
    return ResultRecord(
        m=m,
        phi_bits=rec.phi.bit_length(),
        delta=rec.delta,
        class_phi=c_phi.tag,
        class_psi=c_psi.tag,
        class_psi_plus=plus,
        class_psi_minus=minus,
        witness=c_psi.witness,
        elapsed_ms=round((time.perf_counter() - start) * 1000),
    )


def _survey_chunk(args):
    m, config = args
    return survey_one(m, config)


class ResultStore:
    """Append-only JSON-lines file, one record per m."""

    def __init__(self, path):
        self.path = os.fspath(path)

    def load(self) -> tuple[list[ResultRecord], int]:
        """Read all complete records. Returns (records, skipped_partial_lines).

        A final line without a newline that fails to parse is treated as a
        torn write and skipped; any other malformed line is an error.
        """
        if not os.path.exists(self.path):
            return [], 0
        with open(self.path, "r", encoding="utf-8") as fh:
            text = fh.read()
        lines = text.split("\n")
        tail = lines.pop()  # "" when the file ends with a newline
        records = []
        for i, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                records.append(ResultRecord.from_json(line))
            except (ValueError, KeyError, TypeError) as exc:
                raise StoreError("malformed record (%s)" % exc, line=i) from None
        skipped = 0
        if tail.strip():
            try:
                records.append(ResultRecord.from_json(tail))
            except (ValueError, KeyError, TypeError):
                skipped = 1
        return records, skipped

    def resume_point(self) -> list[ResultRecord]:
        """Validate the store as a contiguous prefix m = 1..N and trim torn tails."""
        records, skipped = self.load()
        for i, rec in enumerate(records):
            if rec.m != i + 1:
                raise StoreError("expected m=%d, found m=%d" % (i + 1, rec.m), line=i + 1)
        if skipped:
            log.warning("dropping 1 partial record at end of %s", self.path)
        self.rewrite(records)
        return records

    def rewrite(self, records: Iterable[ResultRecord]):
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec.to_json() + "\n")
        os.replace(tmp, self.path)

    def append(self, rec: ResultRecord):
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(rec.to_json() + "\n")
            fh.flush()


def iter_survey(k_max: int, config: PipelineConfig = DEFAULT_CONFIG, store: Optional[ResultStore] = None,
                jobs: int = 1) -> Iterator[ResultRecord]:
    """Yield one record per m <= 2^k_max in ascending order, resuming from store."""
    if not 1 <= k_max <= K_MAX_LIMIT:
        raise DomainError("k_max must lie in [1, %d], got %d" % (K_MAX_LIMIT, k_max))
    top = 1 << k_max
    done = store.resume_point() if store is not None else []
    for rec in done[:top]:
        yield rec
    todo = range(len(done) + 1, top + 1)
    if not todo:
        return
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = pool.map(_survey_chunk, ((m, config) for m in todo), chunksize=8)
            for rec in results:
                if store is not None:
                    store.append(rec)
                yield rec
    else:
        for m in todo:
            rec = survey_one(m, config)
            if store is not None:
                store.append(rec)
            yield rec


def count_rows(records: Iterable[ResultRecord], k_max: int) -> list[SurveyRow]:
    """Cumulative Table-style counts for each k <= k_max."""
    counts = [0, 0, 0, 0]
    rows = []
    k = 1
    seen = 0
    for rec in records:
        if rec.m != seen + 1:
            raise DomainError("records must cover m = 1, 2, ... in order")
        seen = rec.m
        if rec.m > 1 << k_max:
            break
        counts[0] += rec.class_phi.is_prime
        counts[1] += rec.class_psi.is_prime
        counts[2] += rec.class_psi_plus is not None and rec.class_psi_plus.is_prime
        counts[3] += rec.class_psi_minus is not None and rec.class_psi_minus.is_prime
        if rec.m == 1 << k:
            rows.append(SurveyRow(k, *counts))
            k += 1
    if len(rows) != k_max:
        raise DomainError("records stop before m = 2^%d" % k_max)
    return rows


def run_survey(k_max: int, config: PipelineConfig = DEFAULT_CONFIG, store: Optional[ResultStore] = None,
               jobs: int = 1) -> tuple[list[SurveyRow], list[ResultRecord]]:
    records = list(iter_survey(k_max, config, store, jobs))
    return count_rows(records, k_max), records


# -- appendix assets ---------------------------------------------------------

@dataclass(frozen=True)
class AppendixAssets:
    phi_prime: tuple[int, ...]
    psi_lt_phi_prime: tuple[int, ...]
    psi_plus_prime: tuple[int, ...]
    psi_minus_prime: tuple[int, ...]

    def get(self, name):
        return getattr(self, name)


def parse_int_list(text: str) -> tuple[int, ...]:
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    values = tuple(int(tok) for tok in re.split(r"[,\s]+", body) if tok)
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ValueError("list is not strictly ascending")
    return values


def load_appendix() -> AppendixAssets:
    data = resources.files("cycloprimes") / "data"
    return AppendixAssets(**{
        name: parse_int_list((data / (name + ".txt")).read_text(encoding="utf-8"))
        for name in APPENDIX_LISTS
    })


def computed_lists(records: Iterable[ResultRecord]) -> dict[str, list[int]]:
    out = {name: [] for name in APPENDIX_LISTS}
    for rec in records:
        if rec.class_phi.is_prime:
            out["phi_prime"].append(rec.m)
        if rec.delta > 1 and rec.class_psi.is_prime:
            out["psi_lt_phi_prime"].append(rec.m)
        if rec.class_psi_plus is not None and rec.class_psi_plus.is_prime:
            out["psi_plus_prime"].append(rec.m)
        if rec.class_psi_minus is not None and rec.class_psi_minus.is_prime:
            out["psi_minus_prime"].append(rec.m)
    return out


@dataclass
class ListComparison:
    name: str
    computed: list[int]
    expected: list[int]

    @property
    def missing(self):
        return sorted(set(self.expected) - set(self.computed))

    @property
    def extra(self):
        return sorted(set(self.computed) - set(self.expected))

    @property
    def ok(self):
        return self.computed == self.expected


@dataclass
class ValidationReport:
    bound: int
    lists: dict[str, ListComparison]

    @property
    def ok(self):
        return all(c.ok for c in self.lists.values())

    def as_dict(self):
        return {
            "bound": self.bound,
            "ok": self.ok,
            "lists": {
                name: {"ok": c.ok, "count": len(c.computed), "missing": c.missing, "extra": c.extra}
                for name, c in self.lists.items()
            },
        }


def validate_appendix(bound: int, records: Iterable[ResultRecord], assets: Optional[AppendixAssets] = None,
                      names: Iterable[str] = APPENDIX_LISTS) -> ValidationReport:
    assets = assets or load_appendix()
    covered = [r for r in records if r.m <= bound]
    if [r.m for r in covered] != list(range(1, bound + 1)):
        raise DomainError("results do not cover every m <= %d" % bound)
    got = computed_lists(covered)
    return ValidationReport(bound, {
        name: ListComparison(name, got[name], [m for m in assets.get(name) if m <= bound])
        for name in names
    })


# -- table output ------------------------------------------------------------

def emit_table(rows: list[SurveyRow], fmt: str = "csv") -> str:
    if not rows:
        raise DomainError("no rows to emit")
    if fmt == "json":
        return json.dumps([r.as_dict() for r in rows], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow((r.k,) + r.as_tuple())
        return buf.getvalue()
    if fmt == "text":
        lines = ["%3s %10s %10s %10s %10s" % ("k", "phi", "psi", "psi+", "psi-")]
        lines += ["%3d %10d %10d %10d %10d" % ((r.k,) + r.as_tuple()) for r in rows]
        return "\n".join(lines) + "\n"
    raise DomainError("unknown table format %r" % fmt)
