"""Survey orchestration: solve every isomorphism class, in parallel, resumably.

Work is split at augmentation level n-2: each task is one base graph whose
accepted descendants (exactly one construction path per class) are expanded
and processed inside a worker.  Tasks are dispatched in a fixed order and an
ordered imap restores that order at the writer, so the JSONL output is
byte-identical for any --jobs value (timing fields aside).

A checkpoint (atomic replace-on-write) stores the next task index and the
output byte offset; resuming truncates the report and continues without
duplication or loss.
"""
from __future__ import annotations

import json
import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import structure
from .canon import canonical_form, canonical_g6
from .enumeration import GenSpec, children, expand_to_level, read_graph6_stream
from .graphs import Graph, girth, petersen, to_graph6
from .solver import DEFAULT_K_MAX, ExceedsKMax, cop_number_with_stats

CHECKPOINT_VERSION = 1
CHECKPOINT_RECORD_INTERVAL = 10_000
CHECKPOINT_SECONDS = 5.0
CONNECTED_CLASS_COUNTS = {
    1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853,
    8: 11_117, 9: 261_080, 10: 11_716_571,
}
# a figure sometimes quoted for connected cubic graphs on 10 vertices;
# independent enumeration gives 19, and verify_m3 reports both
QUOTED_CUBIC_COUNT = 18


@dataclass(frozen=True)
class SurveyConfig:
    n: int
    mode: str = "full"  # full | pruned | audit
    jobs: int = 1
    threshold: int = 3
    k_max: int = DEFAULT_K_MAX
    min_degree: int = 0
    max_degree: int | None = None
    in_path: str | None = None
    sample: int = 10_000
    seed: int = 0
    stable_output: bool = False

    def echo(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "threshold": self.threshold,
            "k_max": self.k_max,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "in_path": self.in_path,
            "sample": self.sample,
            "seed": self.seed,
        }


@dataclass
class SurveySummary:
    n: int
    mode: str
    classes: int = 0
    by_cop_number: dict[int, int] = field(default_factory=dict)
    by_prune_tag: dict[str, int] = field(default_factory=dict)
    high: list[tuple[str, int]] = field(default_factory=list)  # (graph6, c)
    seconds: float = 0.0
    spec_echo: dict = field(default_factory=dict)
    audit_sampled: int = 0
    audit_contradictions: list[str] = field(default_factory=list)

    @property
    def pruned(self) -> int:
        return sum(self.by_prune_tag.values())

    def count_c(self, c: int) -> int:
        return self.by_cop_number.get(c, 0)

    @property
    def c3plus(self) -> int:
        return sum(v for k, v in self.by_cop_number.items() if k >= 3)

    def csv_row(self) -> str:
        return (
            f"{self.n},{self.mode},{self.classes},{self.count_c(1)},"
            f"{self.count_c(2)},{self.c3plus},{self.pruned},{self.seconds:.3f}"
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "classes": self.classes,
            "by_cop_number": {str(k): v for k, v in sorted(self.by_cop_number.items())},
            "by_prune_tag": dict(sorted(self.by_prune_tag.items())),
            "high": [{"graph6": g, "cop_number": c} for g, c in self.high],
            "seconds": round(self.seconds, 3),
            "spec_echo": self.spec_echo,
            "audit_sampled": self.audit_sampled,
            "audit_contradictions": self.audit_contradictions,
        }

    @staticmethod
    def from_state(n: int, mode: str, state: dict) -> "SurveySummary":
        s = SurveySummary(n=n, mode=mode)
        s.classes = state["classes"]
        s.by_cop_number = {int(k): v for k, v in state["by_cop_number"].items()}
        s.by_prune_tag = dict(state["by_prune_tag"])
        s.high = [
            (x["graph6"], x["cop_number"]) if isinstance(x, dict) else tuple(x)
            for x in state["high"]
        ]
        return s


CSV_HEADER = "n,mode,classes,c1,c2,c3plus,pruned,seconds"


# ---------------------------------------------------------------------------
# worker side

_W: dict = {}


def _init_worker(cfg: SurveyConfig) -> None:
    _W["cfg"] = cfg
    _W["spec"] = GenSpec(
        n=cfg.n,
        min_degree=cfg.min_degree,
        max_degree=cfg.max_degree,
        connected_only=True,
    )


Record = tuple  # (g6, n, mind, maxd, girth|-1, kind, value, witness, states, micros)


def _record_for(adj: Sequence[int], cfg: SurveyConfig) -> Record:
    n = len(adj)
    t0 = time.perf_counter_ns()
    g = Graph.trusted(n, adj)
    degs = g.degrees()
    gg = girth(g)
    g_int = -1 if gg == float("inf") else int(gg)
    g6 = canonical_g6(n, adj)
    states = 0
    if cfg.mode in ("pruned", "audit"):
        verdict = structure.prune_c_at_most_2(g)
        if verdict.proved:
            micros = (time.perf_counter_ns() - t0) // 1000
            return (g6, n, min(degs), max(degs), g_int, "p", verdict.lemma,
                    verdict.witness, 0, micros)
    c, states = cop_number_with_stats(g, cfg.k_max)
    micros = (time.perf_counter_ns() - t0) // 1000
    return (g6, n, min(degs), max(degs), g_int, "c", c, (), states, micros)


def _run_one_task(task) -> list[Record]:
    cfg: SurveyConfig = _W["cfg"]
    spec: GenSpec = _W["spec"]
    out: list[Record] = []
    if cfg.in_path is not None:
        # task is a list of graph6 lines from the external stream
        for line in task:
            g = None
            from .graphs import parse_graph6

            g = parse_graph6(line)
            out.append(_record_for(g.adj, cfg))
        return out
    base = Graph.trusted(*task)
    for adj in expand_to_level(base.n, base.adj, spec):
        out.append(_record_for(adj, cfg))
    return out


def _solve_sample_task(g6: str) -> tuple[str, int]:
    from .graphs import parse_graph6

    g = parse_graph6(g6)
    c, _ = cop_number_with_stats(g, _W["cfg"].k_max)
    return g6, c


# ---------------------------------------------------------------------------
# task construction

def _level_graphs(spec: GenSpec, level: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All accepted augmentation-tree nodes at the given level."""
    if level == 1:
        yield 1, (0,)
        return

    def rec(n: int, adj: tuple[int, ...]):
        if n == level:
            yield n, adj
            return
        for cn, cadj in children(n, adj, spec):
            yield from rec(cn, cadj)

    yield from rec(1, (0,))


def build_tasks(cfg: SurveyConfig) -> list:
    if cfg.in_path is not None:
        with open(cfg.in_path, "r") as f:
            lines = [ln.strip() for ln in f if ln.strip()]
        chunk = 200
        return [lines[i : i + chunk] for i in range(0, len(lines), chunk)]
    spec = GenSpec(
        n=cfg.n,
        min_degree=cfg.min_degree,
        max_degree=cfg.max_degree,
        connected_only=True,
    )
    level = max(1, cfg.n - 2)
    return list(_level_graphs(spec, level))


# ---------------------------------------------------------------------------
# writer side

def _format_record(rec: Record, stable: bool) -> str:
    g6, n, mind, maxd, gi, kind, value, witness, states, micros = rec
    gir = '"inf"' if gi < 0 else str(gi)
    if kind == "c":
        verdict = f'"cop_number": {value}'
    else:
        wit = ", ".join(str(w) for w in witness)
        verdict = f'"pruned_by": "{value}", "witness": [{wit}]'
    timing = "" if stable else f', "micros": {micros}'
    return (
        f'{{"graph6": {json.dumps(g6)}, "n": {n}, "min_deg": {mind}, '
        f'"max_deg": {maxd}, "girth": {gir}, {verdict}, '
        f'"states_explored": {states}{timing}}}\n'
    )


class _Checkpointer:
    def __init__(self, path: str | None, cfg: SurveyConfig):
        self.path = path
        self.cfg_echo = cfg.echo()
        self.last_time = time.monotonic()
        self.last_records = 0

    def due(self, records: int) -> bool:
        return self.path is not None and (
            records - self.last_records >= CHECKPOINT_RECORD_INTERVAL
            or time.monotonic() - self.last_time >= CHECKPOINT_SECONDS
        )

    def write(self, next_task: int, offset: int, records: int, summary: SurveySummary,
              reservoir: list, rng_state) -> None:
        if self.path is None:
            return
        state = {
            "version": CHECKPOINT_VERSION,
            "config": self.cfg_echo,
            "next_task": next_task,
            "offset": offset,
            "records": records,
            "summary": {
                "classes": summary.classes,
                "by_cop_number": {str(k): v for k, v in summary.by_cop_number.items()},
                "by_prune_tag": summary.by_prune_tag,
                "high": summary.high,
            },
            "reservoir": reservoir,
            "rng_state": _encode_rng(rng_state),
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w") as f:
            json.dump(state, f)
        os.replace(tmp, self.path)
        self.last_time = time.monotonic()
        self.last_records = records


def _encode_rng(state):
    return [state[0], list(state[1]), state[2]]


def _decode_rng(enc):
    return (enc[0], tuple(enc[1]), enc[2])


class SurveyInterrupted(RuntimeError):
    """Raised by the test hook; the checkpoint on disk is valid."""


def run_survey(
    cfg: SurveyConfig,
    out_path: str,
    summary_path: str | None = None,
    checkpoint_path: str | None = None,
    _interrupt_after_tasks: int | None = None,
) -> SurveySummary:
    """Run one survey; returns the summary (also written as CSV if asked)."""
    t_start = time.monotonic()
    tasks = build_tasks(cfg)
    rng = random.Random(cfg.seed)
    reservoir: list[str] = []  # pruned graph6 sample for audit mode
    summary = SurveySummary(n=cfg.n, mode=cfg.mode, spec_echo=cfg.echo())
    start_task = 0
    offset = 0
    records = 0

    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as f:
            state = json.load(f)
        if state.get("version") != CHECKPOINT_VERSION:
            raise ValueError("unsupported checkpoint version")
        if state["config"] != cfg.echo():
            raise ValueError("checkpoint was written by a different survey spec")
        start_task = state["next_task"]
        offset = state["offset"]
        records = state["records"]
        summary = SurveySummary.from_state(cfg.n, cfg.mode, state["summary"])
        summary.spec_echo = cfg.echo()
        reservoir = list(state["reservoir"])
        rng.setstate(_decode_rng(state["rng_state"]))

    ckpt = _Checkpointer(checkpoint_path, cfg)
    seen_pruned = summary.pruned

    fh = open(out_path, "ab")
    fh.truncate(offset)
    fh.seek(offset)

    def consume(task_idx: int, recs: list[Record]) -> None:
        nonlocal records, offset, seen_pruned
        for rec in recs:
            fh.write(_format_record(rec, cfg.stable_output).encode("ascii"))
            records += 1
            summary.classes += 1
            if rec[5] == "c":
                c = rec[6]
                summary.by_cop_number[c] = summary.by_cop_number.get(c, 0) + 1
                if c >= cfg.threshold:
                    summary.high.append((rec[0], c))
            else:
                tag = rec[6]
                summary.by_prune_tag[tag] = summary.by_prune_tag.get(tag, 0) + 1
                if cfg.mode == "audit":
                    seen_pruned += 1
                    if len(reservoir) < cfg.sample:
                        reservoir.append(rec[0])
                    else:
                        j = rng.randrange(seen_pruned)
                        if j < cfg.sample:
                            reservoir[j] = rec[0]
        if ckpt.due(records):
            fh.flush()
            os.fsync(fh.fileno())
            offset = fh.tell()
            ckpt.write(task_idx + 1, offset, records, summary, reservoir,
                       rng.getstate())

    pending = tasks[start_task:]
    try:
        if cfg.jobs <= 1:
            _init_worker(cfg)
            for i, task in enumerate(pending):
                consume(start_task + i, _run_one_task(task))
                if _interrupt_after_tasks is not None and i + 1 >= _interrupt_after_tasks:
                    _final_checkpoint(fh, ckpt, start_task + i + 1, records, summary,
                                      reservoir, rng)
                    raise SurveyInterrupted()
        else:
            with multiprocessing.Pool(
                cfg.jobs, initializer=_init_worker, initargs=(cfg,)
            ) as pool:
                for i, recs in enumerate(
                    pool.imap(_run_one_task, pending, chunksize=1)
                ):
                    consume(start_task + i, recs)
                    if (
                        _interrupt_after_tasks is not None
                        and i + 1 >= _interrupt_after_tasks
                    ):
                        _final_checkpoint(fh, ckpt, start_task + i + 1, records,
                                          summary, reservoir, rng)
                        raise SurveyInterrupted()
    except KeyboardInterrupt:
        _final_checkpoint(fh, ckpt, None, records, summary, reservoir, rng)
        fh.close()
        raise
    fh.flush()
    fh.close()

    if cfg.mode == "audit" and reservoir:
        summary.audit_sampled = len(reservoir)
        summary.audit_contradictions = _audit_solve(cfg, reservoir)

    summary.seconds = time.monotonic() - t_start
    if summary_path:
        with open(summary_path, "w") as f:
            f.write(CSV_HEADER + "\n")
            f.write(summary.csv_row() + "\n")
    if checkpoint_path and os.path.exists(checkpoint_path):
        os.remove(checkpoint_path)
    return summary


def _final_checkpoint(fh, ckpt, next_task, records, summary, reservoir, rng):
    fh.flush()
    os.fsync(fh.fileno())
    if next_task is not None:
        ckpt.last_records = -(1 << 30)  # force write
        ckpt.write(next_task, fh.tell(), records, summary, reservoir, rng.getstate())


def _audit_solve(cfg: SurveyConfig, sample: list[str]) -> list[str]:
    """Solve a pruned sample exactly; return graphs contradicting c <= 2."""
    bad: list[str] = []
    if cfg.jobs <= 1:
        _init_worker(cfg)
        results = map(_solve_sample_task, sample)
        for g6, c in results:
            if c > 2:
                bad.append(g6)
        return bad
    with multiprocessing.Pool(cfg.jobs, initializer=_init_worker, initargs=(cfg,)) as pool:
        for g6, c in pool.imap_unordered(_solve_sample_task, sample, chunksize=50):
            if c > 2:
                bad.append(g6)
    return sorted(bad)


def audit_existing_report(
    jsonl_path: str, sample: int, seed: int, jobs: int = 1, k_max: int = DEFAULT_K_MAX
) -> tuple[int, list[str]]:
    """Audit pass over an existing pruned report: sample and re-solve."""
    rng = random.Random(seed)
    reservoir: list[str] = []
    seen = 0
    with open(jsonl_path) as f:
        for line in f:
            rec = json.loads(line)
            if "pruned_by" not in rec:
                continue
            seen += 1
            if len(reservoir) < sample:
                reservoir.append(rec["graph6"])
            else:
                j = rng.randrange(seen)
                if j < sample:
                    reservoir[j] = rec["graph6"]
    cfg = SurveyConfig(n=1, mode="audit", jobs=jobs, k_max=k_max)
    return len(reservoir), _audit_solve(cfg, reservoir)


# ---------------------------------------------------------------------------
# m3 verification

@dataclass
class VerifyReport:
    ok: bool
    lines: list[str]
    summaries: dict[int, SurveySummary]
    offender: str | None = None


def count_cubic_classes_n10() -> int:
    spec = GenSpec(n=10, min_degree=3, max_degree=3, connected_only=True)
    from .enumeration import generate

    return sum(1 for _ in generate(spec))


def verify_m3(
    mode: str,
    jobs: int,
    out_dir: str,
    reuse: bool = True,
    max_n: int = 10,
) -> VerifyReport:
    """Survey n = 1..10 and check the minimum-order-3-cop-win claims:
    no class below order 10 needs 3 cops, and at order 10 exactly one does,
    the Petersen graph."""
    os.makedirs(out_dir, exist_ok=True)
    lines: list[str] = []
    summaries: dict[int, SurveySummary] = {}
    ok = True
    offender = None
    petersen_g6 = canonical_form(petersen()).bytes.decode("ascii")

    for n in range(1, max_n + 1):
        cfg = SurveyConfig(n=n, mode=mode, jobs=jobs)
        out_path = os.path.join(out_dir, f"survey-n{n}-{mode}.jsonl")
        sum_path = os.path.join(out_dir, f"survey-n{n}-{mode}.csv")
        done_path = out_path + ".summary.json"
        if reuse and os.path.exists(done_path):
            with open(done_path) as f:
                data = json.load(f)
            s = SurveySummary.from_state(n, mode, data)
            s.seconds = data.get("seconds", 0.0)
            s.spec_echo = data.get("spec_echo", {})
        else:
            s = run_survey(cfg, out_path, sum_path,
                           checkpoint_path=out_path + ".ckpt")
            with open(done_path + ".tmp", "w") as f:
                json.dump(s.to_json(), f)
            os.replace(done_path + ".tmp", done_path)
        summaries[n] = s

        if n <= 9:
            if s.c3plus == 0 and not s.high:
                lines.append(f"n={n}: {s.classes} classes, none need 3 cops: OK")
            else:
                ok = False
                offender = s.high[0][0] if s.high else None
                lines.append(
                    f"n={n}: FAILED, {s.c3plus} classes need >= 3 cops"
                )
        else:
            if len(s.high) == 1 and s.high[0] == (petersen_g6, 3):
                g = s.high[0][0]
                from .graphs import parse_graph6

                by_prop = structure.is_petersen_by_property(parse_graph6(g))
                if by_prop:
                    lines.append(
                        f"n=10: {s.classes} classes, unique 3-cop-win class is the "
                        f"Petersen graph ({g}): OK"
                    )
                else:
                    ok = False
                    offender = g
                    lines.append("n=10: FAILED, witness fails the Petersen property")
            else:
                ok = False
                offender = s.high[0][0] if s.high else None
                lines.append(
                    f"n=10: FAILED, expected the unique 3-cop-win class to be the "
                    f"Petersen graph, got {s.high}"
                )

    if max_n >= 10:
        cubic = count_cubic_classes_n10()
        note = "" if cubic == QUOTED_CUBIC_COUNT else (
            f" (a commonly quoted figure is {QUOTED_CUBIC_COUNT}; independent "
            f"enumeration disagrees and both numbers are reported)"
        )
        lines.append(f"connected cubic classes on 10 vertices: {cubic}{note}")
    lines.append("verification " + ("PASSED" if ok else "FAILED"))
    return VerifyReport(ok=ok, lines=lines, summaries=summaries, offender=offender)
