"""Run one pipeline on a few parameter pairs and look inside the ZNE fits."""

from qemlab import builtin_profile
from qemlab.pipeline import PipelineSpec, evaluate_pipeline, run_pipeline
from qemlab.stats import rem

cfg = builtin_profile("desk")
cfg = cfg.replace(param_pairs=cfg.param_pairs[:4])

# P4 = ZNE + MEM + DD
rec = run_pipeline(PipelineSpec.from_name("P4"), cfg)
for p in rec.params:
    means = [sum(s) / len(s) for s in p.samples]
    print(f"gamma={p.gamma:.3f} beta={p.beta:.3f} ideal={p.ideal:+.4f}")
    print("   per-scale means", " ".join(f"{m:+.4f}" for m in means))
    for fit, est in p.zne.items():
        r = rem(p.ideal, est.mu_lambda0, est.mu_lambda1)
        print(f"   {fit:9s} mitigated {est.mu_lambda0:+.4f} +- {est.sigma_lambda0:.4f}  REM {r:.3f}")

# Algorithm 1 turns the (mu, sigma) pairs into a SUCCESS/FAIL population,
# then the one-sample test asks whether SUCCESS beats a coin flip.
for fit in ("linear", "quadratic"):
    ev = evaluate_pipeline(rec, fit=fit)
    q = ev.quality
    print(
        f"\n{fit}: {ev.population.successes}/{ev.population.n} successes, z = {ev.test.z:.2f}, "
        f"significant = {ev.test.reject}\n   PSR {q.psr:.4f}  median REM bound {q.epsilon:.4f}  "
        f"R {q.R:.4f}  M {q.M:.2f}"
    )
