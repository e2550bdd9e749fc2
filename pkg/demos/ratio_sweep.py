"""
How long are plane trees in practice?
=====================================

A small sweep: for a few sizes, compare the best grid-shift tree against
the minimum tree, and for tiny instances against the exact shortest plane
tree found by branch and bound.
"""
import sys
from pathlib import Path

from bichroma.experiment import cmd_experiment, parse_config

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out") / "sweep"

config = parse_config("""{
  "generators": ["uniform", "max-crossing"],
  "sizes": [6, 9, 16],
  "seeds": {"from": 1, "to": 5},
  "shifts": "all-discrete",
  "oracle": true
}""")
records = cmd_experiment(config, out)

print(f"{'instance':20} {'best/min':>9} {'mean/min':>9} {'plane opt/min':>14}")
for r in records:
    opt = r["plane_optimum"]
    opt_ratio = f"{opt / r['minbst_length']:.4f}" if opt is not None else "-"
    print(f"{r['instance']:20} {r['ratio_min']:9.4f} {r['ratio_mean']:9.4f} {opt_ratio:>14}")
print("records and summary written to", out)
