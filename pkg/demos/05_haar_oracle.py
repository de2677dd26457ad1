"""Exact Haar draws as an oracle for the circuit ensembles.

QR of a complex Gaussian matrix, with the phases of R's diagonal folded
back into Q, gives Haar-random unitaries.  U^T U and -Z U^T Z U give the
matching COE and CSE draws.  A two-sample KS test then compares circuit
statistics with the oracle without going through any reference curve.
"""

from circens.experiment import ExperimentConfig, run_experiment, run_oracle
from circens.spectra import ks_2samp

n, realizations = 6, 30
print("ensemble  spacings  amplitudes  (two-sample KS, circuit vs Haar)")
for ensemble in ("CUE", "COE", "CSE"):
    config = ExperimentConfig(ensemble, n_qubits=n, iterations=20, realizations=realizations, seed=9)
    spacings, amplitudes = run_experiment(config)
    haar_spacings, haar_amplitudes = run_oracle(ensemble, n, realizations, seed=10)
    print("%-8s  %.4f    %.4f" % (
        ensemble,
        ks_2samp(spacings.values, haar_spacings.values),
        ks_2samp(amplitudes.values, haar_amplitudes.values),
    ))
