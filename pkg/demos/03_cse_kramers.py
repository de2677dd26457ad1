"""Self-dual unitaries and Kramers pairs.

U_R = -Z U^T Z U is self-dual under the time reversal T = Z C with
Z Z* = -I, so every eigenvalue is doubly degenerate.  The degenerate
partners are paired up, and the amplitude statistic sums the weight over
both members of each time-reversal partner pair of basis states.
"""

import numpy as np

from circens import build_cse, eig_unitary, make_spec
from circens.ensembles import z_operator
from circens.experiment import ExperimentConfig, run_experiment
from circens.reference import amplitude_law, spacing_surmise
from circens.spectra import amplitudes_cse, kramers_pair, ks_statistic

n = 5
spec = make_spec("circuit", n, 10, seed=5)
u = build_cse(spec)
z = z_operator(n)
print("Z Z* + I:            %.1e" % np.max(np.abs(z @ z.conj() + np.eye(2**n))))
print("self-duality defect: %.1e" % np.max(np.abs(u + z @ u.T @ z)))

d = eig_unitary(u)
pairing = kramers_pair(d)
print("levels: %d, distinct: %d, widest pair gap: %.1e"
      % (d.angles.size, pairing.distinct_angles.size, pairing.max_pair_gap))
print("first few angles:", np.round(d.angles[:6], 6))

y = amplitudes_cse(d, pairing)
print("mean amplitude: %.12f" % y.mean())

config = ExperimentConfig("CSE", n_qubits=6, iterations=20, realizations=30, seed=5)
spacings, amplitudes = run_experiment(config)
print("KS spacings vs CSE surmise: %.4f" % ks_statistic(spacings.values, spacing_surmise("CSE").cdf))
print("KS amplitudes vs 4y e^-2y:  %.4f" % ks_statistic(amplitudes.values, amplitude_law("CSE").cdf))
