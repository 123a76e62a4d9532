"""Exhaustive and sampled sweeps over pairs of quadrics.

Q1 runs over one representative per (rank, type) class: the intersection
count is invariant under simultaneous projective transformations, so this
loses nothing.  Q2 runs over all nonzero coefficient vectors with leading
coefficient 1, i.e. every quadric form up to scalar, indexed
lexicographically.  The index space is cut into contiguous chunks; chunks are
evaluated independently (optionally on a process pool) and merged in index
order, so the record stream does not depend on the worker count.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field as dc_field
from multiprocessing import get_all_start_methods, get_context
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from .bounds import conj1_bound, edoukou_bound
from .gf import FieldSpec
from .projective import pi
from .quadric import (QuadraticForm, QuadricType, canonical_form, class_id,
                      classify, format_form, point_table,
                      split_linear_factors, types_for_rank)

log = logging.getLogger(__name__)

DEFAULT_WORK_CAP = 10 ** 9
DEFAULT_CHUNK = 4096
MAX_WITNESSES = 10
RECORD_MODES = ("all", "extremal", "none")


class CensusError(RuntimeError):
    pass


class CensusViolation(CensusError):
    """An in-hypothesis pair exceeded the bound.  Carries a reproducer."""

    def __init__(self, reproducer: dict):
        self.reproducer = reproducer
        super().__init__("bound violated: " + json.dumps(reproducer))


# --- Q2 index space -------------------------------------------------------------

def num_coefficients(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def num_q2(n: int, q: int) -> int:
    return pi(num_coefficients(n) - 1, q)


def _block_offsets(N: int, q: int) -> np.ndarray:
    # block b holds vectors whose leading 1 sits at position N-1-b
    sizes = [q ** b for b in range(N)]
    return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)


def q2_vectors(indices: np.ndarray, N: int, q: int) -> np.ndarray:
    """Coefficient vectors for the given lexicographic indices."""
    idx = np.asarray(indices, dtype=np.int64)
    offsets = _block_offsets(N, q)
    block = np.searchsorted(offsets, idx, side="right") - 1
    tail = idx - offsets[block]
    lead = N - 1 - block
    out = np.zeros((len(idx), N), dtype=np.int64)
    out[np.arange(len(idx)), lead] = 1
    for pos in range(N - 1, 0, -1):
        live = pos > lead
        out[live, pos] = tail[live] % q
        tail = np.where(live, tail // q, tail)
    return out


def q2_index(coeffs: Sequence[int], q: int) -> int:
    """Inverse of q2_vectors for a coefficient vector with leading entry 1."""
    N = len(coeffs)
    lead = next(i for i, c in enumerate(coeffs) if c)
    if coeffs[lead] != 1:
        raise ValueError("coefficient vector is not normalized")
    tail = 0
    for c in coeffs[lead + 1:]:
        tail = tail * q + int(c)
    return int(_block_offsets(N, q)[N - 1 - lead]) + tail


# --- Q1 classes -------------------------------------------------------------------

def enumerate_canonical_q1(n: int, F: FieldSpec) -> list[QuadraticForm]:
    """One canonical form per (rank, type), ranks 1..n+1."""
    return [canonical_form(r, t, n, F) for r in range(1, n + 2) for t in types_for_rank(r)]


@dataclass(frozen=True)
class Q1Class:
    cid: str
    form: QuadraticForm
    bound: int


@dataclass(frozen=True)
class _Q1Context:
    cid: str
    index: int
    monomials: np.ndarray   # monomial values on the points of Q1
    hyperplanes: tuple[np.ndarray, ...]  # Q1-point positions of each hyperplane inside Q1
    bound: int


def _q1_context(c: Q1Class) -> _Q1Context:
    f = c.form
    F = f.field
    table = point_table(f.n, F)
    on = np.flatnonzero(f.zero_mask(table))
    pts = table.points[on]
    hyps = []
    factors = split_linear_factors(f)
    if factors is not None:
        for L in {tuple(int(x) for x in lin) for lin in factors}:
            vals = F.matmul(pts, np.array([L]).T)[:, 0]
            hyps.append(np.flatnonzero(vals == 0))
    return _Q1Context(c.cid, q2_index(f.normalized().coeffs, F.q), table.monomials[on],
                      tuple(hyps), c.bound)


# --- chunk kernel -------------------------------------------------------------------

@dataclass
class ChunkResult:
    lines: list[str]
    pairs: int
    in_hypothesis: int
    max_count: int
    max_index: int
    extremal: int
    witnesses: list[int]
    exceed: list[tuple[int, int]]  # (q2 index, count) above the bound


def evaluate_chunk(ctx: _Q1Context, F: FieldSpec, n: int, indices: np.ndarray,
                   records: str = "all") -> ChunkResult:
    N = num_coefficients(n)
    C = q2_vectors(indices, N, F.q)
    if len(ctx.monomials):
        zero = F.matmul(C, ctx.monomials.T) == 0
    else:
        zero = np.zeros((len(C), 0), dtype=bool)
    counts = zero.sum(axis=1)
    shared = np.zeros(len(C), dtype=bool)
    for h in ctx.hyperplanes:
        shared |= zero[:, h].all(axis=1)
    same = indices == ctx.index
    in_hyp = ~shared & ~same
    extremal = in_hyp & (counts == ctx.bound)
    exceed = in_hyp & (counts > ctx.bound)

    lines = []
    if records != "none":
        keep = np.ones(len(C), dtype=bool) if records == "all" else extremal
        ser = F.serialize
        for k in np.flatnonzero(keep):
            rec = {
                "q1_class": ctx.cid,
                "q2_index": int(indices[k]),
                "q2": [ser(int(x)) for x in C[k]],
                "count": int(counts[k]),
                "bound": ctx.bound,
                "in_hypothesis": bool(in_hyp[k]),
                "extremal": bool(extremal[k]),
            }
            lines.append(json.dumps(rec, separators=(",", ":")))
    hyp_counts = np.where(in_hyp, counts, -1)
    best = int(np.argmax(hyp_counts)) if len(C) else 0
    return ChunkResult(
        lines=lines,
        pairs=len(C),
        in_hypothesis=int(in_hyp.sum()),
        max_count=int(hyp_counts[best]) if len(C) else -1,
        max_index=int(indices[best]) if len(C) else -1,
        extremal=int(extremal.sum()),
        witnesses=[int(i) for i in indices[extremal][:MAX_WITNESSES]],
        exceed=[(int(indices[k]), int(counts[k])) for k in np.flatnonzero(exceed)[:MAX_WITNESSES]],
    )


# --- configuration and driver ---------------------------------------------------------

@dataclass
class CensusConfig:
    n: int
    field: FieldSpec
    q1: Optional[Sequence[QuadraticForm]] = None  # None: all canonical classes
    ranks: Optional[Sequence[int]] = None          # filter on canonical classes
    types: Optional[Sequence[str]] = None
    mode: str = "exhaustive"                       # or "random"
    samples: int = 10_000
    seed: int = 0
    chunk: int = DEFAULT_CHUNK
    out: Optional[Path] = None
    records: str = "all"
    workers: int = 1
    work_cap: int = DEFAULT_WORK_CAP
    bound: Optional[int] = None                    # default: the theorem bound
    resume: bool = True

    def key(self) -> dict:
        """The parts of the configuration that determine the record stream."""
        return {
            "n": self.n, "p": self.field.p, "m": self.field.m,
            "q1": [format_form(f) for f in self.q1] if self.q1 is not None else None,
            "ranks": list(self.ranks) if self.ranks is not None else None,
            "types": list(self.types) if self.types is not None else None,
            "mode": self.mode,
            "samples": self.samples if self.mode == "random" else None,
            "seed": self.seed if self.mode == "random" else None,
            "chunk": self.chunk, "records": self.records, "bound": self.bound,
        }


def q1_classes(cfg: CensusConfig) -> list[Q1Class]:
    F, n = cfg.field, cfg.n
    bound = cfg.bound if cfg.bound is not None else edoukou_bound(n, F.q)
    if cfg.q1 is not None:
        out = []
        for k, f in enumerate(cfg.q1):
            if f.n != n or f.field != F:
                raise CensusError("explicit Q1 does not match the census ambient space")
            prof = classify(f)
            out.append(Q1Class(f"{class_id(prof.rank, prof.type)}#{k}", f, bound))
        return out
    out = []
    for r in range(1, n + 2):
        if cfg.ranks is not None and r not in cfg.ranks:
            continue
        for t in types_for_rank(r):
            if cfg.types is not None and t.value not in cfg.types:
                continue
            out.append(Q1Class(class_id(r, t), canonical_form(r, t, n, F), bound))
    return out


def _sample_indices(cfg: CensusConfig) -> np.ndarray:
    total = num_q2(cfg.n, cfg.field.q)
    if cfg.mode == "exhaustive":
        return None
    if cfg.mode != "random":
        raise CensusError(f"unknown census mode {cfg.mode!r}")
    rng = np.random.default_rng(cfg.seed)
    return rng.integers(0, total, size=cfg.samples, dtype=np.int64)


def _tasks(cfg: CensusConfig, nclasses: int, samples: Optional[np.ndarray]) -> list[tuple[int, int, int]]:
    total = num_q2(cfg.n, cfg.field.q) if samples is None else len(samples)
    spans = [(a, min(a + cfg.chunk, total)) for a in range(0, total, cfg.chunk)]
    return [(c, a, b) for c in range(nclasses) for a, b in spans]


# worker-side state, installed once per process
_W: dict = {}


def _init_worker(cfg: CensusConfig, classes: list[Q1Class], samples):
    _W["cfg"] = cfg
    _W["ctx"] = [_q1_context(c) for c in classes]
    _W["samples"] = samples


def _run_task(task: tuple[int, int, int]) -> ChunkResult:
    c, a, b = task
    cfg = _W["cfg"]
    samples = _W["samples"]
    idx = np.arange(a, b, dtype=np.int64) if samples is None else samples[a:b]
    return evaluate_chunk(_W["ctx"][c], cfg.field, cfg.n, idx, cfg.records)


def _new_state(classes: list[Q1Class], cfg: CensusConfig) -> dict:
    F = cfg.field
    return {
        "tasks_done": 0,
        "offset": 0,
        "classes": [
            {
                "q1_class": c.cid,
                "q1": format_form(c.form),
                "q1_points": classify(c.form).point_count,
                "pairs_checked": 0,
                "in_hypothesis": 0,
                "max_count": -1,
                "max_witness": None,
                "bound": c.bound,
                "extremal_count": 0,
                "witnesses": [],
                "exceed": [],
            }
            for c in classes
        ],
        "field": {"p": F.p, "m": F.m, "modulus": list(F.modulus)},
    }


def _merge(state: dict, c: int, res: ChunkResult) -> None:
    cls = state["classes"][c]
    cls["pairs_checked"] += res.pairs
    cls["in_hypothesis"] += res.in_hypothesis
    if res.max_count > cls["max_count"]:
        cls["max_count"] = res.max_count
        cls["max_witness"] = res.max_index
    cls["extremal_count"] += res.extremal
    room = MAX_WITNESSES - len(cls["witnesses"])
    if room > 0:
        cls["witnesses"] += res.witnesses[:room]
    room = MAX_WITNESSES - len(cls["exceed"])
    if room > 0:
        cls["exceed"] += [list(e) for e in res.exceed[:room]]


def form_from_index(index: int, n: int, F: FieldSpec) -> QuadraticForm:
    vec = q2_vectors(np.array([index]), num_coefficients(n), F.q)[0]
    return QuadraticForm(n, F, tuple(int(x) for x in vec))


def _reproducer(cfg: CensusConfig, cls: Q1Class, index: int, count: int) -> dict:
    F = cfg.field
    return {
        "p": F.p, "m": F.m, "n": cfg.n,
        "q1": format_form(cls.form),
        "q2": format_form(form_from_index(index, cfg.n, F)),
        "q2_index": index, "count": count, "bound": cls.bound,
    }


def iter_results(cfg: CensusConfig, classes: list[Q1Class], tasks, samples) -> Iterator[ChunkResult]:
    if cfg.workers <= 1:
        _init_worker(cfg, classes, samples)
        for t in tasks:
            yield _run_task(t)
        return
    ctx = get_context("fork") if "fork" in get_all_start_methods() else get_context()
    with ctx.Pool(cfg.workers, initializer=_init_worker, initargs=(cfg, classes, samples)) as pool:
        yield from pool.imap(_run_task, tasks, chunksize=1)


def sweep(cfg: CensusConfig, strict: bool = True) -> dict:
    """Run the sweep and return the merged state (see :func:`run_census`)."""
    F, n = cfg.field, cfg.n
    if cfg.records not in RECORD_MODES:
        raise CensusError(f"records must be one of {RECORD_MODES}")
    if cfg.chunk < 1:
        raise CensusError("chunk size must be positive")
    classes = q1_classes(cfg)
    total_q2 = num_q2(n, F.q)
    work = (total_q2 if cfg.mode == "exhaustive" else cfg.samples) * pi(n, F.q)
    if work > cfg.work_cap:
        raise CensusError(f"census needs {work} evaluations, above the work cap {cfg.work_cap}")
    samples = _sample_indices(cfg)
    tasks = _tasks(cfg, len(classes), samples)

    state = _new_state(classes, cfg)
    out = ckpt = None
    if cfg.out is not None:
        out_path = Path(cfg.out)
        ckpt = out_path.with_name(out_path.name + ".ckpt")
        if cfg.resume and ckpt.exists() and out_path.exists():
            saved = json.loads(ckpt.read_text())
            if saved.get("config") == cfg.key():
                state = saved["state"]
                log.info("resuming after %d of %d chunks", state["tasks_done"], len(tasks))
        out = open(out_path, "r+b" if state["tasks_done"] else "wb")
        out.seek(state["offset"])
        out.truncate()

    try:
        todo = tasks[state["tasks_done"]:]
        for (c, _, _), res in zip(todo, iter_results(cfg, classes, todo, samples)):
            if strict and res.exceed:
                index, count = res.exceed[0]
                raise CensusViolation(_reproducer(cfg, classes[c], index, count))
            _merge(state, c, res)
            state["tasks_done"] += 1
            if out is not None:
                if res.lines:
                    out.write(("\n".join(res.lines) + "\n").encode())
                out.flush()
                state["offset"] = out.tell()
                tmp = ckpt.with_name(ckpt.name + ".tmp")
                tmp.write_text(json.dumps({"config": cfg.key(), "state": state}))
                os.replace(tmp, ckpt)
    finally:
        if out is not None:
            out.close()
    if ckpt is not None and ckpt.exists():
        ckpt.unlink()
    return state


def summarize(cfg: CensusConfig, state: dict) -> dict:
    F, n = cfg.field, cfg.n
    classes = state["classes"]
    for cls in classes:
        if cls["max_witness"] is not None:
            cls["max_witness"] = {"q2_index": cls["max_witness"],
                                  "q2": format_form(form_from_index(cls["max_witness"], n, F))}
        cls["witnesses"] = [{"q2_index": i, "q2": format_form(form_from_index(i, n, F))}
                            for i in cls["witnesses"]]
    bound = cfg.bound if cfg.bound is not None else edoukou_bound(n, F.q)
    max_count = max((c["max_count"] for c in classes), default=-1)
    violations = [dict(q1_class=c["q1_class"], q2_index=i, count=k)
                  for c in classes for i, k in c["exceed"]]
    for c in classes:
        del c["exceed"]
    return {
        "n": n, "p": F.p, "m": F.m, "q": F.q,
        "mode": cfg.mode,
        "seed": cfg.seed if cfg.mode == "random" else None,
        "samples": cfg.samples if cfg.mode == "random" else None,
        "chunk": cfg.chunk,
        "bound": bound,
        "pairs_checked": sum(c["pairs_checked"] for c in classes),
        "in_hypothesis": sum(c["in_hypothesis"] for c in classes),
        "max_count": max_count,
        "attained": max_count == bound,
        "extremal_count": sum(c["extremal_count"] for c in classes),
        "violations": violations,
        "classes": classes,
    }


def run_census(cfg: CensusConfig) -> dict:
    """Sweep, stream records to ``cfg.out`` and return the summary.

    Raises :class:`CensusViolation` at the first in-hypothesis pair above the
    bound.
    """
    return summarize(cfg, sweep(cfg, strict=True))


CSV_COLUMNS = ("q1_class", "pairs_checked", "in_hypothesis", "max_count", "bound", "extremal_count")


def summary_csv(summary: dict) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for c in summary["classes"]:
        lines.append(",".join(str(c[k]) for k in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


# --- degenerate-quadric probe -------------------------------------------------------------

@dataclass
class ProbeReport:
    n: int
    q: int
    rank: int
    bound: int
    mode: str
    seed: Optional[int]
    per_type: list[dict] = dc_field(default_factory=list)

    @property
    def max_count(self) -> int:
        return max((t["max_count"] for t in self.per_type), default=-1)

    @property
    def counterexamples(self) -> list[dict]:
        return [c for t in self.per_type for c in t["counterexamples"]]

    def to_json(self) -> dict:
        return {
            "n": self.n, "q": self.q, "rank": self.rank, "bound": self.bound,
            "mode": self.mode, "seed": self.seed,
            "max_count": self.max_count,
            "counterexamples": self.counterexamples,
            "per_type": self.per_type,
        }


def probe_conjecture1(n: int, F: FieldSpec, r: int, sample_count: Optional[int] = None,
                      seed: int = 0, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> ProbeReport:
    """Max |Q1 ∩ Q2| over Q2 for canonical Q1 of rank r, against the conjectured bound.

    Exhaustive over Q2 when ``sample_count`` is None.  Would-be counterexamples
    are reported, never raised.
    """
    bound = conj1_bound(n, r, F.q)
    cfg = CensusConfig(
        n=n, field=F, ranks=[r],
        mode="exhaustive" if sample_count is None else "random",
        samples=sample_count or 0, seed=seed, chunk=chunk,
        records="none", workers=workers, bound=bound,
    )
    state = sweep(cfg, strict=False)
    report = ProbeReport(n, F.q, r, bound, cfg.mode, seed if sample_count is not None else None)
    for cls in state["classes"]:
        cex = []
        for index, count in cls["exceed"]:
            g = form_from_index(index, n, F)
            cex.append({"q1_class": cls["q1_class"], "q2": format_form(g), "count": count,
                        "q2_rank": classify(g).rank})
        if cex:
            log.warning("conjectured bound %d exceeded for %s: %s", bound, cls["q1_class"], cex[0])
        witness = None
        if cls["max_witness"] is not None:
            g = form_from_index(cls["max_witness"], n, F)
            witness = {"q2": format_form(g), "q2_rank": classify(g).rank}
        report.per_type.append({
            "q1_class": cls["q1_class"],
            "q1": cls["q1"],
            "pairs_checked": cls["pairs_checked"],
            "max_count": cls["max_count"],
            "max_witness": witness,
            "counterexamples": cex,
        })
    return report
