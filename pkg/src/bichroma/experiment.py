"""Measurement loop: approximation ratios against the minimum tree.

A config is a JSON object such as::

    {
      "generators": ["uniform"],
      "sizes": [8, 16],
      "seeds": {"from": 1, "to": 10},
      "colors": 2,
      "shifts": "all-discrete",
      "oracle": true
    }

``shifts`` is ``"all-discrete"`` (every grid shift, which also yields the
derandomized tree), ``{"random": [seeds]}``, or a list of shift labels
(``"random:S"``, ``"grid:I,J"``). Gadget generators ignore ``seeds`` and
``colors``. Set ``"timings": true`` to add wall-clock columns; they make
output differ between runs.
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from .crossings import verify_minbst_properties
from .errors import ConfigError, IoError
from .generators import GENERATORS, generate
from .io import _read_text, _write_text
from .minbst import min_colored_spanning_tree
from .oracles import MAX_PLANE_ORACLE_N, brute_force_min_plane_tree
from .quadtree import Shift, all_discrete_lengths, approx_tree, _worker_count

ALL_DISCRETE = "all-discrete"
KNOWN_KEYS = {"generators", "generator", "sizes", "seeds", "colors", "shifts", "oracle", "timings"}

CSV_FIELDS = [
    "instance", "generator", "n", "seed", "colors", "minbst_length", "shifts",
    "approx_min", "approx_mean", "approx_max", "derandomized_length", "derandomized_shift",
    "ratio_min", "ratio_mean", "ratio_max", "plane_optimum", "crossing_count",
    "per_edge_max", "quasi_plane", "odd_girth", "length_ties",
]
TIMING_FIELDS = ["minbst_seconds", "approx_seconds"]


def _line_of(text: str, key: str) -> int:
    m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    return text.count("\n", 0, m.start()) + 1 if m else 1


def parse_config(text: str) -> dict:
    """Validate a config document; errors name the offending line."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise ConfigError("line 1: config must be a JSON object")

    def fail(key, msg):
        raise ConfigError(f"line {_line_of(text, key)}: {key}: {msg}")

    for key in doc:
        if key not in KNOWN_KEYS:
            fail(key, "unknown key")

    gens = doc.get("generators", doc.get("generator", "uniform"))
    gen_key = "generators" if "generators" in doc else "generator"
    if isinstance(gens, str):
        gens = [gens]
    if not isinstance(gens, list) or not gens or any(g not in GENERATORS for g in gens):
        fail(gen_key, f"expected names from {sorted(GENERATORS)}")

    sizes = doc.get("sizes")
    if (not isinstance(sizes, list) or not sizes
            or any(not isinstance(n, int) or isinstance(n, bool) or n < 2 for n in sizes)):
        fail("sizes", "expected a non-empty list of integers >= 2")
    if "uniform" not in gens and any(n < 4 for n in sizes):
        fail("sizes", "gadgets need n >= 4")

    seeds = doc.get("seeds", [0])
    if isinstance(seeds, dict):
        if set(seeds) != {"from", "to"} or not all(isinstance(v, int) for v in seeds.values()):
            fail("seeds", 'expected {"from": A, "to": B}')
        seeds = list(range(seeds["from"], seeds["to"] + 1))
    if not isinstance(seeds, list) or not seeds or any(not isinstance(s, int) for s in seeds):
        fail("seeds", "expected a list of integers or a from/to range")

    colors = doc.get("colors", 2)
    if not isinstance(colors, int) or isinstance(colors, bool) or colors < 2:
        fail("colors", "expected an integer >= 2")

    shifts = doc.get("shifts", ALL_DISCRETE)
    if isinstance(shifts, dict):
        rnd = shifts.get("random")
        if set(shifts) != {"random"} or not isinstance(rnd, list) or not rnd \
                or any(not isinstance(s, int) for s in rnd):
            fail("shifts", 'expected {"random": [seeds]}')
        shifts = [f"random:{s}" for s in rnd]
    elif isinstance(shifts, list):
        if not shifts:
            fail("shifts", "empty shift list")
        for s in shifts:
            if not isinstance(s, str) or not re.fullmatch(r"random:-?\d+|grid:\d+,\d+", s):
                fail("shifts", f"bad shift label {s!r}")
    elif shifts != ALL_DISCRETE:
        fail("shifts", f'expected "{ALL_DISCRETE}", {{"random": [...]}} or a list of labels')

    for key in ("oracle", "timings"):
        if not isinstance(doc.get(key, False), bool):
            fail(key, "expected true or false")

    return {
        "generators": gens, "sizes": sizes, "seeds": seeds, "colors": colors,
        "shifts": shifts, "oracle": doc.get("oracle", False),
        "timings": doc.get("timings", False),
    }


def load_config(path) -> dict:
    return parse_config(_read_text(path))


def _jobs(cfg: dict) -> list[tuple]:
    jobs = []
    for gen in cfg["generators"]:
        for n in cfg["sizes"]:
            if gen == "uniform":
                jobs.extend((gen, n, s, cfg["colors"]) for s in cfg["seeds"])
            else:
                jobs.append((gen, n, None, 2))
    return jobs


def run_instance(job: tuple, cfg: dict) -> dict:
    gen, n, seed, colors = job
    inst = generate(gen, n, seed or 0, colors)
    points = inst.points
    name = f"{gen}-n{n}" + (f"-s{seed}" if seed is not None else "")

    t0 = time.perf_counter()
    ref = min_colored_spanning_tree(points)
    t1 = time.perf_counter()
    if cfg["shifts"] == ALL_DISCRETE:
        rows = all_discrete_lengths(points, workers=1)
        lengths = [r[0] for r in rows]
        length, idx, _ = min(rows, key=lambda r: (r[0], r[1]))
        N = math.isqrt(len(rows))
        derand, derand_shift = length, Shift.discrete(idx // N, idx % N, N).label()
        labels = None
    else:
        labels = list(cfg["shifts"])
        lengths = [approx_tree(points, Shift.parse(s, n)).total_length for s in labels]
        derand, derand_shift = None, None
    t2 = time.perf_counter()

    report = verify_minbst_properties(points, ref)
    L = ref.total_length
    rec = {
        "instance": name, "generator": gen, "n": n, "seed": seed, "colors": colors,
        "minbst_length": L, "shifts": len(lengths),
        "approx_min": min(lengths), "approx_mean": math.fsum(lengths) / len(lengths),
        "approx_max": max(lengths),
        "derandomized_length": derand, "derandomized_shift": derand_shift,
        "ratio_min": min(lengths) / L, "ratio_mean": math.fsum(lengths) / len(lengths) / L,
        "ratio_max": max(lengths) / L,
        "plane_optimum": None,
        "crossing_count": report.crossing_count, "per_edge_max": report.per_edge_max,
        "quasi_plane": report.quasi_plane, "odd_girth": report.odd_girth,
        "length_ties": report.length_ties,
        "approx_lengths": lengths,
    }
    if labels is not None:
        rec["shift_labels"] = labels
    if cfg["oracle"] and n <= MAX_PLANE_ORACLE_N:
        rec["plane_optimum"] = brute_force_min_plane_tree(points).total_length
    if cfg["timings"]:
        rec["minbst_seconds"] = t1 - t0
        rec["approx_seconds"] = t2 - t1
    return rec


def _run_star(args):
    return run_instance(*args)


def run_experiment(cfg: dict, workers: Optional[int] = None) -> list[dict]:
    """One record per instance, in config order regardless of ``workers``."""
    jobs = [(job, cfg) for job in _jobs(cfg)]
    workers = min(_worker_count(workers), max(1, len(jobs)))
    if workers == 1:
        return [run_instance(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_star, jobs))


def summarize(records: list[dict]) -> list[dict]:
    """Max and mean ratios per (generator, n)."""
    groups: dict[tuple, list[dict]] = {}
    for r in records:
        groups.setdefault((r["generator"], r["n"]), []).append(r)
    out = []
    for (gen, n), rs in groups.items():
        derand = [r["derandomized_length"] / r["minbst_length"] for r in rs
                  if r["derandomized_length"] is not None]
        out.append({
            "generator": gen, "n": n, "instances": len(rs),
            "ratio_max": max(r["ratio_max"] for r in rs),
            "ratio_mean": statistics.fmean(r["ratio_mean"] for r in rs),
            "derandomized_ratio_max": max(derand) if derand else None,
            "derandomized_ratio_mean": statistics.fmean(derand) if derand else None,
            "max_crossings": max(r["crossing_count"] for r in rs),
        })
    return out


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_csv_value(r.get(f)) for f in fields])
    return buf.getvalue()


def cmd_experiment(config, out_dir, workers: Optional[int] = None) -> list[dict]:
    """Run the experiment described by ``config`` (path or parsed dict) and
    write records.csv, records.json, summary.csv and summary.json."""
    cfg = config if isinstance(config, dict) else load_config(config)
    records = run_experiment(cfg, workers)
    summary = summarize(records)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {out}: {exc.strerror or exc}") from None
    fields = CSV_FIELDS + (TIMING_FIELDS if cfg["timings"] else [])
    _write_text(out / "records.csv", _to_csv(records, fields))
    _write_text(out / "records.json", json.dumps(records, indent=2, sort_keys=True) + "\n")
    sfields = list(summary[0]) if summary else []
    _write_text(out / "summary.csv", _to_csv(summary, sfields))
    _write_text(out / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return records
