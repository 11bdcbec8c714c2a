"""Corpus scans over generated maps, with line-delimited JSON reports.

Per-map seeds come from the master seed by splitmix64: map ``k`` gets the
``k``-th output of the splitmix64 stream started at the master seed, i.e.
``mix64(master + (k + 1) * 0x9E3779B97F4A7C15)``. Any map can therefore be
regenerated on its own, in any order.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable

from .criteria import classify, degree_conjecture_check, gcd_conjecture_check
from .endo import FAMILIES, GeneratorSpec, PolyMap, generate_family, invert, is_keller
from .errors import (BudgetExceeded, CounterexampleCandidate, DegenerateSampleError,
                     GeneratorBudgetError, ParseError, SchemaError)
from .extension import (coordinate_minpoly, extension_degree, is_dominant, tower_degree,
                        verify_formanek)
from .groebner import DEFAULT_MAX_PAIRS
from .polycore import format_polynomial, parse_polynomial

log = logging.getLogger(__name__)

__all__ = [
    "SCHEMA_VERSION",
    "CHECKS",
    "ScanConfig",
    "ScanRecord",
    "ScanResult",
    "splitmix64",
    "map_seed",
    "parse_config",
    "run_scan",
    "analyze_map",
    "summarize",
    "write_report",
    "read_report",
    "report_hash",
]

SCHEMA_VERSION = 1
CHECKS = ("degree_conjecture", "gcd_conjecture", "formanek", "minpoly", "classify",
          "invert", "tower")
_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """The splitmix64 finalizer (a bijective 64-bit mixer)."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def map_seed(master: int, index: int) -> int:
    return splitmix64(master + (index + 1) * _GOLDEN)


# -- config --------------------------------------------------------------------

@dataclass(frozen=True)
class ScanConfig:
    """Everything that determines a scan, except wall-clock timings.

    ``families`` maps family names to counts (kept in the given order);
    ``controls`` are extra maps given as coordinate-string tuples.
    """

    seed: int = 0
    families: tuple = ()
    n_min: int = 2
    n_max: int = 2
    degree: int = 3
    factors: int = 3
    r: int = 1
    checks: tuple = CHECKS
    controls: tuple = ()
    out: str | None = None
    max_pairs: int = DEFAULT_MAX_PAIRS
    jobs: int = 1

    def __post_init__(self):
        for name, count in self.families:
            if name not in FAMILIES:
                raise ParseError(f"unknown family {name!r}")
            if count < 0:
                raise ParseError(f"negative count for {name}")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ParseError(f"unknown checks: {', '.join(sorted(bad))}")
        if not 1 <= self.n_min <= self.n_max:
            raise ParseError("n range must satisfy 1 <= min <= max")
        if not 0 <= self.seed <= _MASK:
            raise ParseError("seed must be a 64-bit unsigned integer")

    def replace(self, **kw) -> "ScanConfig":
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d.update(kw)
        return ScanConfig(**d)

    def tasks(self):
        """``(map_id, kind, payload)`` in map-index order."""
        out = []
        idx = 0
        for name, count in self.families:
            for _ in range(count):
                s = map_seed(self.seed, idx)
                n = random.Random(s).randint(self.n_min, self.n_max)
                spec = GeneratorSpec(name, s, n=n, degree=self.degree,
                                     factors=self.factors, r=min(self.r, n))
                out.append((f"{name}-{idx:05d}", "spec", spec))
                idx += 1
        for k, coords in enumerate(self.controls):
            out.append((f"control-{k:03d}", "control", tuple(coords)))
        return out


def _int(v, lineno):
    try:
        return int(v, 0)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {v!r}") from None


def parse_config(text: str) -> ScanConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys: ``seed``, ``families`` (``name:count, ...``), ``n`` (``2`` or
    ``2-3``), ``degree``, ``factors``, ``r``, ``checks`` (comma list),
    ``control`` (one map per line, coordinates separated by ``,``),
    ``out``, ``max_pairs`` (Groebner pair cap for inversion), ``jobs``.
    """
    kw = {}
    controls = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key == "seed":
            kw["seed"] = _int(val, lineno)
        elif key == "families":
            fams = []
            for item in filter(None, (s.strip() for s in val.split(","))):
                name, _, count = item.partition(":")
                fams.append((name.strip(), _int(count.strip() or "1", lineno)))
            kw["families"] = tuple(fams)
        elif key == "n":
            lo, _, hi = val.partition("-")
            kw["n_min"] = _int(lo.strip(), lineno)
            kw["n_max"] = _int(hi.strip(), lineno) if hi else kw["n_min"]
        elif key in ("degree", "factors", "r", "max_pairs", "jobs"):
            kw[key] = _int(val, lineno)
        elif key == "checks":
            kw["checks"] = tuple(s.strip() for s in val.split(",") if s.strip())
        elif key in ("control", "controls"):
            coords = [s.strip() for s in val.split(",")]
            try:
                for c in coords:
                    parse_polynomial(c, len(coords))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            controls.append(tuple(coords))
        elif key == "out":
            kw["out"] = val or None
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    kw["controls"] = tuple(controls)
    try:
        return ScanConfig(**kw)
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


# -- records -------------------------------------------------------------------

@dataclass
class ScanRecord:
    """One analysed map. ``timings`` is the only non-deterministic field."""

    map_id: str
    index: int
    status: str = "OK"
    provenance: dict = field(default_factory=dict)
    n: int | None = None
    coords: list | None = None
    degrees: list | None = None
    keller: bool | None = None
    D: int | None = None
    d: list | None = None
    formanek_ok: bool | None = None
    formanek_witness: str | None = None
    certificate: str | None = None
    certificate_digest: str | None = None
    certificate_verified: bool | None = None
    inverted: bool | None = None
    degree_conjecture: dict | None = None
    gcd_conjecture: dict | None = None
    tower: list | None = None
    zhang_bound: int | None = None
    error: str | None = None
    timings: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        missing = {"map_id", "index", "schema_version"} - set(d)
        if missing:
            raise SchemaError(f"missing fields: {', '.join(sorted(missing))}")
        unknown = set(d) - names
        if unknown:
            raise SchemaError(f"unknown fields: {', '.join(sorted(unknown))}")
        return cls(**d)


@dataclass
class ScanResult:
    records: list
    summary: dict


def _stringify(v):
    return v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v)


def _build(kind, payload):
    if kind == "spec":
        return generate_family(payload)
    n = len(payload)
    return PolyMap(tuple(parse_polynomial(c, n) for c in payload), {"family": "control"})


def analyze_map(map_id: str, index: int, kind: str, payload, checks=CHECKS,
                max_pairs: int = DEFAULT_MAX_PAIRS, seed: int = 0) -> ScanRecord:
    """Run the selected checks on one map; never raises except on an abort."""
    rec = ScanRecord(map_id, index)
    if kind == "spec":
        rec.provenance = {k: _stringify(v) for k, v in payload.as_dict().items()}
    t0 = time.perf_counter()
    try:
        F = _build(kind, payload)
    except GeneratorBudgetError as exc:
        rec.status, rec.error = "GENERATOR_ERROR", str(exc)
        return rec
    rec.timings["generate"] = time.perf_counter() - t0
    rec.provenance = {k: _stringify(v) for k, v in (F.provenance or {}).items()}
    rec.n = F.n
    rec.coords = [format_polynomial(c) for c in F.coords]
    rec.degrees = list(F.degrees())
    rec.keller = is_keller(F)
    if F.n == 2 and rec.keller:
        rec.zhang_bound = min(rec.degrees)

    def timed(name, fn):
        t = time.perf_counter()
        try:
            return fn()
        finally:
            rec.timings[name] = time.perf_counter() - t

    try:
        if not is_dominant(F):
            rec.status = "NOT_DOMINANT"
            return rec
        if "invert" in checks or "classify" in checks:
            rec.inverted = timed("invert", lambda: invert(F, max_pairs=max_pairs) is not None)
            if rec.keller and not rec.inverted:
                rec.status, rec.error = "COUNTEREXAMPLE_CANDIDATE", "Keller map did not invert"
                return rec
        if "degree_conjecture" in checks:
            dc = timed("degree_conjecture", lambda: degree_conjecture_check(F, seed))
            rec.D = dc.D
            rec.degree_conjecture = dc.as_dict()
            if rec.keller and not dc.holds:
                rec.status, rec.error = "COUNTEREXAMPLE_CANDIDATE", "degree bound violated"
                return rec
        elif "tower" in checks:
            rec.D = timed("extension_degree", lambda: extension_degree(F, seed))
        if "minpoly" in checks or "tower" in checks:
            rec.d = timed("minpoly", lambda: [coordinate_minpoly(F, i, seed + i + 1).degree
                                              for i in range(F.n)])
        if "formanek" in checks:
            fr = timed("formanek", lambda: verify_formanek(F, seed))
            rec.formanek_ok = fr.ok
            rec.formanek_witness = fr.witness_text()
        if "tower" in checks:
            rec.tower = timed("tower", lambda: [tower_degree(F, i, seed) for i in range(F.n)])
        if rec.keller:
            if "classify" in checks:
                cert = timed("classify", lambda: classify(F, seed))
                rec.certificate = cert.rule.value
                rec.certificate_digest = cert.digest()
                rec.certificate_verified = cert.verified_by_inversion
            if "gcd_conjecture" in checks:
                rec.gcd_conjecture = timed("gcd_conjecture",
                                           lambda: gcd_conjecture_check(F).as_dict())
    except BudgetExceeded as exc:
        rec.status, rec.error = "BUDGET_EXCEEDED", str(exc)
        return rec
    except DegenerateSampleError as exc:
        rec.status, rec.error = "DEGENERATE_SAMPLE", str(exc)
        return rec
    except CounterexampleCandidate as exc:
        rec.status, rec.error = "COUNTEREXAMPLE_CANDIDATE", str(exc)
        return rec
    if rec.tower is not None and rec.d is not None and rec.D is not None:
        if any(rec.D != di * ti for di, ti in zip(rec.d, rec.tower)):
            rec.status = "INCONSISTENT"
            rec.error = "tower multiplicativity failed"
    return rec


def _analyze_task(args):
    return analyze_map(*args)


def summarize(records: Iterable[ScanRecord]) -> dict:
    records = list(records)
    if not records:
        return {}
    status = Counter(r.status for r in records)
    rules = Counter(r.certificate for r in records if r.certificate)
    deg = Counter()
    for r in records:
        if r.degree_conjecture:
            if not r.degree_conjecture["keller"]:
                deg["out_of_hypothesis"] += 1
            deg["holds" if r.degree_conjecture["holds"] else "fails"] += 1
    gcds = Counter()
    for r in records:
        if r.gcd_conjecture:
            gcds["applicable" if r.gcd_conjecture["applicable"] else "not_applicable"] += 1
            if r.gcd_conjecture["automorphism_confirmed"]:
                gcds["confirmed"] += 1
    return {
        "maps": len(records),
        "keller": sum(1 for r in records if r.keller),
        "status": dict(sorted(status.items())),
        "rules": dict(sorted(rules.items())),
        "degree_conjecture": dict(sorted(deg.items())),
        "gcd_conjecture": dict(sorted(gcds.items())),
        "formanek_true": sum(1 for r in records if r.formanek_ok),
    }


def run_scan(config: ScanConfig, out: str | Path | None = None) -> ScanResult:
    """Analyse every configured map; records come back in map-index order.

    A Keller map that fails inversion or the degree bound stops the scan:
    the report written so far (ending with that record) is flushed and
    :class:`CounterexampleCandidate` is raised carrying the record.
    """
    out = out if out is not None else config.out
    tasks = [(mid, i, kind, payload, config.checks, config.max_pairs, map_seed(config.seed, i))
             for i, (mid, kind, payload) in enumerate(config.tasks())]
    records = []

    def results():
        if config.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(config.jobs) as pool:
                # map() yields in submission order, whatever the completion order
                yield from pool.map(_analyze_task, tasks)
        else:
            for t in tasks:
                yield _analyze_task(t)

    for rec in results():
        records.append(rec)
        log.info("%s %s %s", rec.map_id, rec.status, rec.certificate or "")
        if rec.status == "COUNTEREXAMPLE_CANDIDATE":
            if out:
                write_report(records, out)
            raise CounterexampleCandidate(f"{rec.map_id}: {rec.error}", rec.to_dict())
    if out:
        write_report(records, out)
    return ScanResult(records, summarize(records))


# -- persistence ---------------------------------------------------------------

def _line(rec: ScanRecord, timings=True) -> str:
    d = rec.to_dict()
    if not timings:
        d.pop("timings", None)
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def write_report(records: Iterable[ScanRecord], path: str | Path) -> None:
    text = "".join(_line(r) + "\n" for r in records)
    Path(path).write_text(text, encoding="utf-8")


def read_report(path: str | Path) -> list:
    out = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            d = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {lineno}: malformed record ({exc.msg})") from None
        if not isinstance(d, dict):
            raise SchemaError(f"line {lineno}: record is not an object")
        if d.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError(f"line {lineno}: schema version {d.get('schema_version')!r}, "
                              f"expected {SCHEMA_VERSION}")
        try:
            out.append(ScanRecord.from_dict(d))
        except SchemaError as exc:
            raise SchemaError(f"line {lineno}: {exc}") from None
    return out


def report_hash(records: Iterable[ScanRecord]) -> str:
    """SHA-256 of the canonical report with timing fields removed."""
    h = hashlib.sha256()
    for r in records:
        h.update(_line(r, timings=False).encode())
        h.update(b"\n")
    return h.hexdigest()
