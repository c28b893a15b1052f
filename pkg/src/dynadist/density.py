"""Prime sweeps measuring how often reduced maps x^k + m have roots, cycles and distinct graphs.

A sweep writes one JSON line per prime after a header line that carries the
configuration and its hash.  Lines are written with sorted keys and no
whitespace so that identical configurations produce byte-identical files,
independent of how many worker processes were used and of any resumption.
"""

import hashlib
import itertools
import json
import logging
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import graphs
from .arith import primes_up_to
from .dynatomic import DynatomicSpec, check_squarefree, period_point_exists, phi_for_prime
from .polynomials import has_root_mod_p
from .wreath import p_k

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
BLOCK_SIZE = 1 << 15
VETTED_MS = (1, 2)
VETTED_MAX_N = 3


class ResumeMismatch(RuntimeError):
    pass


class MissingDistinguishability(KeyError):
    pass


@dataclass
class ExperimentConfig:
    k: int
    ms: tuple
    ns: tuple
    limit: int
    graph_threshold: int = 1 << 12
    seed: int = 0
    output: str = None
    resume: bool = False
    workers: int = 1
    root_exhaustive_limit: int = 1 << 10

    def __post_init__(self):
        self.ms = tuple(int(m) for m in self.ms)
        self.ns = tuple(int(n) for n in self.ns)
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.limit < 2:
            raise ValueError(f"prime bound must be at least 2, got {self.limit}")
        if not self.ms:
            raise ValueError("need at least one m value")
        if len(set(self.ms)) != len(self.ms):
            raise ValueError(f"m values must be distinct: {self.ms}")
        if not self.ns or min(self.ns) < 1 or len(set(self.ns)) != len(self.ns):
            raise ValueError(f"n values must be distinct positive integers: {self.ns}")

    def identity(self):
        """The fields that determine the records (not where or how they are computed)."""
        return {
            "k": self.k,
            "ms": list(self.ms),
            "ns": list(self.ns),
            "limit": self.limit,
            "graph_threshold": self.graph_threshold,
            "seed": self.seed,
            "v": SCHEMA_VERSION,
        }

    def digest(self):
        blob = json.dumps(self.identity(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def specs(self):
        return [DynatomicSpec(self.k, m, n) for m in self.ms for n in self.ns]


def event_key(m, n, kind):
    return f"m{m}_n{n}_{kind}"


def pair_key(m1, m2):
    return f"m{m1}_m{m2}"


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def measure_prime(config, p, cache=None):
    """The record for a single prime."""
    cache = {} if cache is None else cache
    rng = random.Random(config.seed * 1_000_003 + p)
    use_graph = p <= config.graph_threshold
    graph_of = {}
    if use_graph:
        for m in config.ms:
            graph_of[m] = graphs.build_graph(DynatomicSpec(config.k, m, 1).map(), p)
    events = {}
    for m in config.ms:
        for n in config.ns:
            spec = DynatomicSpec(config.k, m, n)
            phi = phi_for_prime(spec, p, cache)
            events[event_key(m, n, "root")] = has_root_mod_p(phi)
            events[event_key(m, n, "period")] = period_point_exists(
                spec, p, phi, graph_of.get(m), rng, config.root_exhaustive_limit
            )
    dist = {}
    if use_graph:
        for m1, m2 in itertools.combinations(config.ms, 2):
            dist[pair_key(m1, m2)] = not graphs.isomorphic(graph_of[m1], graph_of[m2])
    return {"p": p, "events": events, "dist": dist, "v": SCHEMA_VERSION}


def _measure_block(args):
    config, primes = args
    cache = {}
    return [_dumps(measure_prime(config, p, cache)) for p in primes]


def _blocks(primes, size):
    it = iter(primes)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _header(config):
    return _dumps({"config": config.identity(), "hash": config.digest(), "kind": "header", "v": SCHEMA_VERSION})


def _read_existing(config, path):
    """Validated records from an earlier run; a torn final line is cut off the file."""
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n")
    # everything after the last newline is an incomplete write
    complete, tail = lines[:-1], lines[-1]
    if not complete:
        return None, []
    header = json.loads(complete[0])
    if header.get("hash") != config.digest():
        raise ResumeMismatch(f"{path} was written by a different configuration")
    records = []
    good_bytes = len(complete[0]) + 1
    for line in complete[1:]:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            break
        records.append(rec)
        good_bytes += len(line) + 1
    if tail or good_bytes != len(data):
        log.warning("dropping %d bytes of partial output from %s", len(data) - good_bytes, path)
        with open(path, "r+b") as fh:
            fh.truncate(good_bytes)
    return header, records


def sweep(config, progress=None):
    """Run the experiment and return its DensityReport.

    Records are appended to ``config.output`` as they complete, so an
    interrupted run can be continued with ``resume=True``.
    """
    for spec in config.specs():
        check_squarefree(spec)
    records = []
    start_after = 1
    fh = None
    if config.output:
        if config.resume and os.path.exists(config.output):
            header, records = _read_existing(config, config.output)
            fh = open(config.output, "a", encoding="utf-8", newline="\n")
            if header is None:
                fh.write(_header(config) + "\n")
            if records:
                start_after = records[-1]["p"]
        else:
            fh = open(config.output, "w", encoding="utf-8", newline="\n")
            fh.write(_header(config) + "\n")
    try:
        primes = (p for p in primes_up_to(config.limit) if p > start_after)
        jobs = ((config, chunk) for chunk in _blocks(primes, BLOCK_SIZE))
        if config.workers > 1:
            pool = ProcessPoolExecutor(max_workers=config.workers)
            results = pool.map(_measure_block, jobs)
        else:
            pool = None
            results = map(_measure_block, jobs)
        try:
            for lines in results:
                for line in lines:
                    records.append(json.loads(line))
                if fh is not None:
                    fh.write("".join(line + "\n" for line in lines))
                    fh.flush()
                if progress is not None:
                    progress(records[-1]["p"], len(records))
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    finally:
        if fh is not None:
            fh.close()
    return build_report(config, records)


def load_records(path):
    """Header and records of a sweep file (a torn final line is ignored)."""
    header = None
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            obj = json.loads(line)
            if obj.get("kind") == "header":
                header = obj
            else:
                records.append(obj)
    return header, records


# -- analysis -----------------------------------------------------------------


def _lookup(record, key):
    if key in record["events"]:
        return record["events"][key]
    if key in record.get("dist", {}):
        return record["dist"][key]
    raise KeyError(f"unknown event {key!r} at p = {record['p']}")


def empirical_density(records, key):
    """Fraction of records in which the event holds."""
    if not records:
        raise ValueError("no records")
    return sum(1 for rec in records if _lookup(rec, key)) / len(records)


def independence_deviation(records, key_a, key_b):
    """|mu(A and B) - mu(A) mu(B)| over the swept primes."""
    if not records:
        raise ValueError("no records")
    both = sum(1 for rec in records if _lookup(rec, key_a) and _lookup(rec, key_b))
    return abs(both / len(records) - empirical_density(records, key_a) * empirical_density(records, key_b))


def exactly_one_density(records, key_a, key_b):
    if not records:
        raise ValueError("no records")
    return sum(1 for rec in records if _lookup(rec, key_a) != _lookup(rec, key_b)) / len(records)


def predicted_density(n, k):
    """Root density of Phi_n for x^k + m when its Galois group is the full wreath product."""
    return float(p_k(n, k))


def tolerance(q, count):
    """Four binomial standard deviations, but never below 0.01."""
    return max(0.01, 4 * math.sqrt(q * (1 - q) / count))


def distinguishability_density(records, ms, mode="full", ns=None):
    """Fraction of primes at which the maps x^k + m, m in ms, are pairwise distinguishable.

    ``mode="full"`` uses the recorded graph isomorphism tests; ``mode="cycles"``
    only asks, for each pair, whether some configured n-cycle exists for
    exactly one of the two maps.
    """
    ms = list(ms)
    if len(set(ms)) != len(ms):
        raise ValueError(f"m values must be distinct: {ms}")
    if not records:
        raise ValueError("no records")
    if len(ms) == 1:
        return 1.0
    pairs = list(itertools.combinations(ms, 2))
    if mode == "full":
        def distinct(rec, a, b):
            dist = rec.get("dist", {})
            key = pair_key(a, b) if pair_key(a, b) in dist else pair_key(b, a)
            if key not in dist:
                raise MissingDistinguishability(f"no graph comparison for {a}, {b} at p = {rec['p']}")
            return dist[key]
    elif mode == "cycles":
        if ns is None:
            ns = sorted({int(k.split("_")[1][1:]) for k in records[0]["events"]})

        def distinct(rec, a, b):
            ev = rec["events"]
            return any(ev[event_key(a, n, "period")] != ev[event_key(b, n, "period")] for n in ns)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    hits = sum(1 for rec in records if all(distinct(rec, a, b) for a, b in pairs))
    return hits / len(records)


@dataclass
class DensityReport:
    config: dict
    prime_count: int
    events: list = field(default_factory=list)
    independence: list = field(default_factory=list)
    exceptional: dict = field(default_factory=dict)
    distinguishability: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    def to_csv(self):
        import csv
        import io

        buf = io.StringIO()
        cols = ["event", "count", "density", "predicted", "tolerance", "within", "vetted"]
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in self.events:
            writer.writerow({c: row.get(c, "") for c in cols})
        return buf.getvalue()


def build_report(config, records):
    total = len(records)
    report = DensityReport(config=config.identity(), prime_count=total)
    if not total:
        return report
    for m in config.ms:
        for n in config.ns:
            for kind in ("root", "period"):
                key = event_key(m, n, kind)
                count = sum(1 for rec in records if rec["events"][key])
                row = {"event": key, "count": count, "density": count / total}
                if kind == "root":
                    q = predicted_density(n, config.k)
                    tol = tolerance(q, total)
                    row.update(predicted=q, tolerance=tol, within=abs(count / total - q) <= tol,
                               vetted=m in VETTED_MS and n <= VETTED_MAX_N)
                report.events.append(row)
            report.exceptional[f"m{m}_n{n}"] = [
                rec["p"] for rec in records
                if rec["events"][event_key(m, n, "root")] != rec["events"][event_key(m, n, "period")]
            ]
    for n in config.ns:
        for m1, m2 in itertools.combinations(config.ms, 2):
            a, b = event_key(m1, n, "root"), event_key(m2, n, "root")
            report.independence.append({
                "a": a,
                "b": b,
                "deviation": independence_deviation(records, a, b),
                "exactly_one": exactly_one_density(records, a, b),
            })
    report.distinguishability["cycles"] = distinguishability_density(records, config.ms, "cycles", config.ns)
    graphed = [rec for rec in records if rec["dist"] or len(config.ms) == 1]
    if graphed:
        report.distinguishability["full"] = distinguishability_density(graphed, config.ms, "full")
        report.distinguishability["full_primes"] = len(graphed)
    return report


def report_from_file(path):
    header, records = load_records(path)
    if header is None:
        raise ValueError(f"{path} has no header line")
    cfg = header["config"]
    config = ExperimentConfig(
        k=cfg["k"], ms=cfg["ms"], ns=cfg["ns"], limit=cfg["limit"],
        graph_threshold=cfg["graph_threshold"], seed=cfg["seed"],
    )
    return build_report(config, records)


def fraction_str(x):
    return str(x) if isinstance(x, Fraction) else repr(x)
