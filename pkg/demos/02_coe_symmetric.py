"""Symmetric unitaries from U^T U.

The transposed circuit is built gate by gate (transposed rotations in
reverse order), so U^T U is symmetric to rounding error.  Its eigenvector
amplitudes follow the chi-squared law with one degree of freedom.
"""

import numpy as np

from circens import build_coe, build_cue, make_spec
from circens.ensembles import build_transpose_circuit
from circens.experiment import ExperimentConfig, run_experiment
from circens.reference import amplitude_law, spacing_surmise
from circens.spectra import ks_statistic

spec = make_spec("circuit", 5, 10, seed=3)
u = build_cue(spec)
ut = build_transpose_circuit(spec)
print("gate-by-gate transpose vs .T: %.2e" % np.max(np.abs(ut - u.T)))

w = build_coe(spec)
print("symmetry defect |W - W^T|:    %.2e" % np.max(np.abs(w - w.T)))

config = ExperimentConfig("COE", n_qubits=6, iterations=20, realizations=30, seed=3)
spacings, amplitudes = run_experiment(config)
print("KS spacings vs COE surmise:   %.4f" % ks_statistic(spacings.values, spacing_surmise("COE").cdf))
print("KS amplitudes vs chi^2_1:     %.4f" % ks_statistic(amplitudes.values, amplitude_law("COE").cdf))

# the COE law has a heavy tail and many small amplitudes
for y in (0.01, 0.1, 1.0, 4.0):
    print("P(y <= %-4g) sample %.4f  law %.4f"
          % (y, np.mean(amplitudes.values <= y), amplitude_law("COE").cdf(y)))
