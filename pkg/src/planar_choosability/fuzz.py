"""Seeded fuzz runs: the (4,2) solver on the standard corpus, or the oracle on
conjectured list modes. Produces a RunReport with records ordered by instance id."""

from __future__ import annotations

import multiprocessing
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from . import io
from .errors import ChoosabilityError, InternalProofViolation
from .gen import GenSpec, ListMode, Separated, Symmetric, TCommon, generate, standard_corpus
from .lists import verify_coloring
from .oracle import DEFAULT_BUDGET, Status, brute_force_color
from .solver import CASE_LABELS, solve

MODES: dict[str, ListMode] = {
    "4-2": Separated(4, 2),
    "3-1": Separated(3, 1),
    "symmetric-4": Symmetric(4),
    "t-common": TCommon(4, 2),
}

# graphs for oracle-only modes stay small enough for exhaustive search
CONJECTURE_MAX_SIZE = 100


def corpus(mode: str, count: int, seed: int) -> list[GenSpec]:
    if mode == "4-2":
        return standard_corpus(count, seed, MODES[mode])
    return standard_corpus(count, seed, MODES[mode], max_size=CONJECTURE_MAX_SIZE)


def spec_doc(spec: GenSpec) -> dict:
    d = asdict(spec)
    d["list_mode"] = asdict(spec.list_mode)
    return d


@dataclass
class Outcome:
    record: dict
    dump: tuple[str, str] | None = None  # graph and lists text of a failing instance


def _case_counts(hist: Counter) -> dict[str, int]:
    return {label: hist[label] for label in CASE_LABELS if hist[label]}


def run_solver(i: int, spec: GenSpec) -> Outcome:
    g, lists = generate(spec)
    rec = {"id": i, "spec": spec_doc(spec), "vertices": g.n}
    dump = None
    try:
        f, trace = solve(g, lists)
    except InternalProofViolation as e:
        rec.update(outcome=f"{e.kind}-violation", verified=False, steps=len(e.trace or ()),
                   cases=_case_counts(e.trace.histogram()) if e.trace else {})
        dump = (io.dumps_graph(g), io.dumps_lists(lists))
    except ChoosabilityError as e:
        rec.update(outcome="error", verified=False, steps=0, cases={}, error=type(e).__name__)
        dump = (io.dumps_graph(g), io.dumps_lists(lists))
    else:
        ok = not verify_coloring(g, lists, f)
        rec.update(outcome="colored" if ok else "unverified", verified=ok, steps=len(trace),
                   cases=_case_counts(trace.histogram()))
        if not ok:
            dump = (io.dumps_graph(g), io.dumps_lists(lists))
    return Outcome(rec, dump)


def run_oracle(i: int, spec: GenSpec, budget: int) -> Outcome:
    g, lists = generate(spec)
    res = brute_force_color(g, lists, budget)
    if res.status is Status.FOUND and verify_coloring(g, lists, res.coloring):
        raise AssertionError(f"oracle returned an improper coloring on instance {i}")
    rec = {"id": i, "spec": spec_doc(spec), "vertices": g.n,
           "outcome": str(res.status), "nodes": res.nodes_explored}
    dump = (io.dumps_graph(g), io.dumps_lists(lists)) if res.status is Status.INFEASIBLE else None
    return Outcome(rec, dump)


def _task(args) -> Outcome:
    i, spec, mode, budget, timings = args
    t0 = time.perf_counter()
    out = run_solver(i, spec) if mode == "4-2" else run_oracle(i, spec, budget)
    if timings:
        out.record["seconds"] = round(time.perf_counter() - t0, 6)
    return out


@dataclass
class RunReport:
    mode: str
    seed: int
    count: int
    records: list[dict] = field(default_factory=list)
    dumps: dict[int, tuple[str, str]] = field(default_factory=dict)

    @property
    def histogram(self) -> dict[str, int]:
        total: Counter = Counter()
        for r in self.records:
            total.update(r.get("cases", {}))
        return {label: total[label] for label in CASE_LABELS}

    @property
    def counters(self) -> dict[str, int]:
        outcomes = Counter(r["outcome"] for r in self.records)
        if self.mode == "4-2":
            return {
                "instances": len(self.records),
                "colored": outcomes["colored"],
                "verified": sum(1 for r in self.records if r["verified"]),
                "proof_violations": outcomes["proof-violation"],
                "validity_failures": outcomes["validity-violation"],
                "unverified": outcomes["unverified"],
                "errors": outcomes["error"],
            }
        return {
            "instances": len(self.records),
            "found": outcomes["Found"],
            "counterexamples": outcomes["Infeasible"],
            "aborted": outcomes["Aborted"],
        }

    @property
    def ok(self) -> bool:
        c = self.counters
        if self.mode == "4-2":
            return c["verified"] == c["instances"]
        return c["counterexamples"] == 0

    def to_doc(self) -> dict:
        doc = {"mode": self.mode, "seed": self.seed, "count": self.count,
               "counters": self.counters}
        if self.mode == "4-2":
            doc["histogram"] = self.histogram
        doc["records"] = self.records
        return doc


def fuzz(
    mode: str,
    count: int,
    seed: int,
    jobs: int = 1,
    budget: int = DEFAULT_BUDGET,
    timings: bool = False,
) -> RunReport:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {sorted(MODES)}")
    tasks = [(i, spec, mode, budget, timings) for i, spec in enumerate(corpus(mode, count, seed))]
    report = RunReport(mode, seed, count)
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            outcomes = list(pool.imap(_task, tasks, chunksize=1))
    else:
        outcomes = [_task(t) for t in tasks]
    for out in sorted(outcomes, key=lambda o: o.record["id"]):
        report.records.append(out.record)
        if out.dump is not None:
            report.dumps[out.record["id"]] = out.dump
    return report
