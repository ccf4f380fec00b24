import json

import pytest

from paley_ricci import sweep
from paley_ricci.errors import PaleyError
from paley_ricci.sweep import (
    SweepConfig,
    admissible_instances,
    count_rectangle,
    load_config,
    nabla_by_shift,
    run_instance,
    run_sweep,
    sample_edges,
)

from conftest import graph


def test_enumeration_matches_rectangle_filter():
    cfg = SweepConfig(p_range=(2, 40), n_range=(1, 6), k_range=(1, 400), q_cap=1000)
    brute = sorted(
        (p, n, k)
        for p in range(2, 41) if all(p % d for d in range(2, p))
        for n in range(1, 7) if p**n <= 1000
        for k in range(1, 401) if (p**n - 1) % (2 * k) == 0
    )
    assert admissible_instances(cfg) == brute
    assert count_rectangle(cfg) == 400 * sum(1 for p in range(2, 41) if all(p % d for d in range(2, p)) for n in range(1, 7) if p**n <= 1000)


def test_config_parsing(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text(
        "# main acceptance run\n"
        "p_range = 3-23\n"
        "n_range=1-4\n"
        "k_range=2-6   # small k\n"
        "q_cap=500\n"
        "edge_sample=3\n"
        "output_path=out.csv\n"
        "format=csv\n"
        "workers=2\n"
    )
    cfg = load_config(path)
    assert cfg == SweepConfig((3, 23), (1, 4), (2, 6), 500, 3, "out.csv", "csv", 2)


@pytest.mark.parametrize(
    "text", ["q_cap 5\n", "colour=red\n", "p_range=9-3\n", "edge_sample=0\n", "format=xml\n"]
)
def test_config_rejects(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(PaleyError):
        load_config(path)


def test_sample_edges_deterministic():
    G = graph(5, 2, 2)
    a = sample_edges(G, 10)
    assert a == sample_edges(G, 10)
    assert a[0] == (0, 1) and len(a) == 10
    assert all(G.is_edge(x, y) for x, y in a)


def test_nabla_by_shift_matches_literal():
    G = graph(7, 2, 4)
    from paley_ricci.curvature import nabla_size

    literal = {nabla_size(G, 0, int(s)) for s in G.shifts}
    assert set(nabla_by_shift(G).tolist()) == literal


def test_run_instance_record():
    rec = run_instance(3, 2, 2, 4)
    assert rec["status"] == "pass" and rec["failures"] == []
    assert rec["connected_bfs"] and rec["claimed"] and rec["nabla"] == 1
    rec = run_instance(13, 1, 2, 4)
    assert rec["status"] == "pass" and not rec["claimed"] and rec["curvature"]


def test_main_acceptance_run():
    report = run_sweep(SweepConfig(p_range=(2, 500), n_range=(1, 9), k_range=(2, 6), q_cap=500))
    s = report.summary
    assert s["fail"] == 0, report.failures[:3]
    assert s["total"] == s["pass"] + s["fail"] + s["skipped"]
    assert s["pass"] == len(report.records) > 0


def test_skipped_only_when_nothing_admissible():
    cfg = SweepConfig(k_range=(50, 50), q_cap=100)
    report = run_sweep(cfg)
    assert report.records == []
    assert report.summary == {"total": count_rectangle(cfg), "pass": 0, "fail": 0, "skipped": count_rectangle(cfg)}
    assert report.summary["skipped"] > 0


def test_report_determinism(tmp_path):
    cfg = SweepConfig(p_range=(3, 13), n_range=(1, 3), k_range=(2, 6), q_cap=200, edge_sample=3)
    outputs = []
    for i, workers in enumerate((1, 1, 2)):
        cfg.workers = workers
        report = run_sweep(cfg)
        for fmt in ("json", "csv"):
            path = tmp_path / f"r{i}.{fmt}"
            report.write(path, fmt)
            outputs.append((fmt, path.read_bytes()))
    for fmt in ("json", "csv"):
        blobs = {b for f, b in outputs if f == fmt}
        assert len(blobs) == 1
        blob = blobs.pop()
        assert b"\r\n" not in blob
    data = json.loads(next(b for f, b in outputs if f == "json"))
    keys = [(r["p"], r["n"], r["k"]) for r in data["records"]]
    assert keys == sorted(keys)


def test_forced_bug_is_caught(monkeypatch):
    monkeypatch.setattr(sweep, "cells_balanced", lambda cells: not all(c.balanced for c in cells))
    report = run_sweep(SweepConfig(p_range=(3, 11), n_range=(2, 4), k_range=(2, 4), q_cap=150))
    assert report.summary["fail"] > 0
    for f in report.failures:
        assert f["check"] == "cell_balance"
        assert {"p", "n", "k", "edge"} <= set(f)
