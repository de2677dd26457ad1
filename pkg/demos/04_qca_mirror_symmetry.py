"""Cellular-automaton circuits and mirror symmetry.

With one species every qubit gets the same rotation, and with uniform
couplings the operator commutes with the bit-reversal permutation.  The
mirror-antisymmetric eigenvectors then vanish on every palindromic basis
state, which leaves exact zeros in the amplitude sample.  Two species
with a non-palindromic layout break the symmetry.
"""

import numpy as np

from circens import build_cue, make_spec
from circens.experiment import ExperimentConfig, run_experiment
from circens.linalg import bit_reversal_permutation
from circens.reference import amplitude_law
from circens.spectra import ks_statistic

n = 6
mirror = bit_reversal_permutation(n)
cases = [
    ("qca1", None, "uniform couplings"),
    ("qca1", (0, np.pi / 5), "bond 0 at pi/5"),
    ("qca2", None, "two species"),
]
for arch, override, label in cases:
    u = build_cue(make_spec(arch, n, 10, seed=2, coupling_override=override))
    comm = np.max(np.abs(u @ mirror - mirror @ u))
    print("%-5s %-18s |[U, M]| = %.1e" % (arch, label, comm))

print()
law = amplitude_law("COE")
for arch in ("qca1", "qca2"):
    config = ExperimentConfig("COE", architecture=arch, n_qubits=n, iterations=20, realizations=40, seed=2)
    _, amplitudes = run_experiment(config)
    zeros = np.mean(amplitudes.values < 1e-20)
    print("%s COE: KS %.4f, fraction of exact zeros %.4f"
          % (arch, ks_statistic(amplitudes.values, law.cdf), zeros))

# odd chains: the alternating layout ABABABA is a palindrome and stays
# mirror symmetric, while ABABABB does not
for layout in ("ABABABA", "ABABABB"):
    u = build_cue(make_spec("qca2", 7, 10, seed=2, species_layout=layout))
    m7 = bit_reversal_permutation(7)
    print("layout %s: |[U, M]| = %.1e" % (layout, np.max(np.abs(u @ m7 - m7 @ u))))
