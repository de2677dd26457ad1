"""Pseudo-random circuits as a stand-in for Haar-random unitaries.

Builds a handful of 6-qubit circuits, looks at one operator, then pools
spacings and eigenvector amplitudes over realizations and compares them
with the CUE reference curves.
"""

import numpy as np

from circens import build_cue, make_spec, unitarity_defect
from circens.experiment import ExperimentConfig, run_experiment
from circens.reference import amplitude_law, spacing_surmise
from circens.spectra import histogram, ks_statistic

# a single circuit: 6 qubits, 20 iterations of rotations + couplers
spec = make_spec("circuit", n_qubits=6, iterations=20, seed=11)
u = build_cue(spec)
print("dimension:", spec.dim)
print("independent variables:", spec.n_independent_variables)  # 3n(m+1) + 1
print("unitarity defect: %.2e" % unitarity_defect(u))

# pool statistics over 30 realizations
config = ExperimentConfig("CUE", n_qubits=6, iterations=20, realizations=30, seed=11)
spacings, amplitudes = run_experiment(config)
print("\n%d spacings, %d amplitudes" % (spacings.values.size, amplitudes.values.size))

surmise = spacing_surmise("CUE")
law = amplitude_law("CUE")
print("KS spacings vs surmise:   %.4f" % ks_statistic(spacings.values, surmise.cdf))
print("KS amplitudes vs e^{-y}:  %.4f" % ks_statistic(amplitudes.values, law.cdf))

# a coarse text histogram against the surmise
rows, _ = histogram(spacings.values, bin_count=12, value_range=(0, 3))
print("\n   s     sample  surmise")
for left, right, count, density in rows:
    mid = 0.5 * (left + right)
    bar = "#" * int(round(40 * density))
    print("%5.2f  %6.3f  %6.3f  %s" % (mid, density, surmise.pdf(mid), bar))

# level repulsion: small spacings are rare
print("\nfraction of spacings below 0.1: %.4f (surmise %.4f)"
      % (np.mean(spacings.values < 0.1), surmise.cdf(0.1)))
