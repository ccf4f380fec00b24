import tempfile
from pathlib import Path

from paley_ricci.sweep import load_config, run_sweep

# a sweep config is a plain key=value file
cfg_text = """\
# small verification sweep
p_range=3-31
n_range=1-4
k_range=2-6
q_cap=300
edge_sample=4
format=json
"""
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "sweep.cfg"
    path.write_text(cfg_text)
    cfg = load_config(path)
print(cfg)

report = run_sweep(cfg)
print(report.summary)

# one record per admissible (p, n, k)
for r in report.records[:8]:
    print(r["p"], r["n"], r["k"], "connected" if r["connected_bfs"] else f"{r['component_count']} components",
          "claimed" if r["claimed"] else "not claimed", r["status"])

# instances outside the divisibility hypothesis where 0-1 has no perfect matching
gaps = [(r["p"], r["n"], r["k"]) for r in report.records if not r["claimed"] and not r["matching"]]
print("no perfect matching:", gaps)

print(report.to_csv().splitlines()[0])
