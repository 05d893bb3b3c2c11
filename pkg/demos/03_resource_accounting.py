"""How T, S and R respond to the ingredients of a pipeline."""

import math

from qemlab import builtin_profile
from qemlab.pipeline import Backend, PipelineSpec, run_pipeline
from qemlab.resource import entropy, resource, weighted_shots

cfg = builtin_profile("desk")
cfg = cfg.replace(param_pairs=cfg.param_pairs[:1], repeats=2)
backend = Backend(cfg.noise)

print("pipe  circuits       T        S        R")
for name in ("P1", "P2", "P3", "P5", "P1E", "P7E"):
    ledger = run_pipeline(PipelineSpec.from_name(name), cfg, backend).ledger
    print(f"{name:4s} {len(ledger):9d} {weighted_shots(ledger):8.4f} {entropy(ledger):8.4f} {resource(ledger):8.4f}")

# DD adds gates but not circuits, so P3 matches P1. MEM adds 16 short
# calibration circuits. RC splits each scale into 50 equally weighted
# duplicates, which adds ln 50 to the entropy.
print(f"\nln 50 = {math.log(50):.4f}")
