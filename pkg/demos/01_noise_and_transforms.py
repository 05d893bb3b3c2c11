"""Walk through the noise model and the circuit transforms on small circuits."""

import numpy as np

from qemlab import NoiseModel
from qemlab.circuit import Circuit, Gate, QaoaParams, build_qaoa_maxcut, ideal_expectation, maxcut_observable
from qemlab.simulator import exact_distribution, exact_expectation, schedule
from qemlab.transforms import fold, insert_dd, randomize_compile

# A Ramsey experiment: H, wait, H. Idle qubits pick up a detuning phase
# and lose coherence, so P(0) oscillates and decays with the wait.
noise = NoiseModel()
print("wait (ns)  P(0) bare   P(0) with DD")
for wait in (0, 500, 1000, 2000, 4000):
    ramsey = Circuit(1, (Gate.make("H", 0), Gate.delay(0, wait), Gate.make("H", 0), Gate.make("MEASURE", 0)))
    bare = exact_distribution(ramsey, noise)[0]
    dd = exact_distribution(insert_dd(ramsey), noise)[0]
    print(f"{wait:9d}  {bare:10.4f}  {dd:12.4f}")
# the X pair undoes the detuning phase; only the T2 decay and readout remain

# The 4-node MaxCut QAOA circuit and its schedule
params = QaoaParams(gamma=0.7, beta=0.6)
circ = build_qaoa_maxcut(params)
obs = maxcut_observable(4)
sched = schedule(circ)
print("\ncircuit length", sched.length, "ns; idle windows per qubit:")
for q, gaps in enumerate(sched.gaps):
    print(f"  q{q}: {[(round(a), round(b)) for a, b in gaps]}")

# Folding amplifies noise but keeps the logic
ideal = ideal_expectation(circ, obs)
print(f"\nideal <O> = {ideal:.4f}")
for scale in (1, 3, 5):
    local, glob = fold(circ, scale, "local"), fold(circ, scale, "global")
    print(
        f"scale {scale}: local {exact_expectation(local, noise, obs):.4f}"
        f"  global {exact_expectation(glob, noise, obs):.4f}"
        f"  (noiseless check {ideal_expectation(local, obs) - ideal:+.1e})"
    )

# Randomized compiling turns the coherent ZZ error into stochastic noise;
# averaging over duplicates is what the pipelines do with shots.
dups = randomize_compile(circ, 50, seed=1)
avg = np.mean([exact_expectation(d, noise, obs) for d in dups])
print(f"\nRC average over 50 duplicates {avg:.4f} vs bare {exact_expectation(circ, noise, obs):.4f}")
print(f"DD on the bare circuit {exact_expectation(insert_dd(circ), noise, obs):.4f}")
