"""Multi-realization experiments: build, diagonalize, pool statistics."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import reference
from .ensembles import (
    Architecture,
    Ensemble,
    ZMode,
    build,
    check_z_mode,
    make_rng,
    make_spec,
    substream_seed,
)
from .linalg import eig_unitary
from .spectra import (
    KramersPairingError,
    SampleLabel,
    StatSample,
    amplitudes_cse,
    amplitudes_standard,
    kramers_pair,
    nn_spacings,
)

WORKERS_ENV = "CIRCENS_WORKERS"


@dataclass(frozen=True)
class ExperimentConfig:
    ensemble: Ensemble
    architecture: Architecture = Architecture.CIRCUIT
    n_qubits: int = 8
    iterations: int = 60
    realizations: int = 100
    seed: int = 0
    z_mode: ZMode = None
    coupling_override: tuple = None
    species_layout: str = None

    def __post_init__(self):
        object.__setattr__(self, "ensemble", Ensemble(self.ensemble))
        object.__setattr__(self, "architecture", Architecture(self.architecture))
        z_mode = ZMode.default_for(self.architecture) if self.z_mode is None else ZMode(self.z_mode)
        object.__setattr__(self, "z_mode", z_mode)
        if self.realizations < 1:
            raise ValueError("need at least one realization")
        if self.n_qubits < 1 or self.iterations < 0:
            raise ValueError("need n_qubits >= 1 and iterations >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.species_layout is not None and self.architecture is not Architecture.QCA_TWO:
            raise ValueError("a species layout only applies to two-species QCA")
        if self.ensemble is Ensemble.CSE:
            check_z_mode(self.architecture, self.n_qubits, self.z_mode, self.species_layout)
        # validates the bond index
        self.spec(0)

    def spec(self, realization):
        return make_spec(
            self.architecture,
            self.n_qubits,
            self.iterations,
            substream_seed(self.seed, realization),
            self.coupling_override,
            self.species_layout,
        )


def statistics_of(u, ensemble, z_mode=ZMode.STANDARD, species_layout=None):
    """Unfolded spacings and amplitudes of one operator."""
    decomp = eig_unitary(u)
    if Ensemble(ensemble) is Ensemble.CSE:
        pairing = kramers_pair(decomp)
        return (
            nn_spacings(pairing.distinct_angles),
            amplitudes_cse(decomp, pairing, z_mode, species_layout),
        )
    return nn_spacings(decomp.angles), amplitudes_standard(decomp)


def realization_statistics(config, realization):
    spec = config.spec(realization)
    u = build(spec, config.ensemble, config.z_mode)
    try:
        return statistics_of(u, config.ensemble, config.z_mode, spec.species_layout)
    except KramersPairingError as exc:
        raise KramersPairingError(f"realization {realization}: {exc}") from None


def default_workers():
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def _pool_map(fn, args, workers):
    if workers <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*args)))


def _pack(config, parts):
    spacings = np.concatenate([p[0] for p in parts])
    amplitudes = np.concatenate([p[1] for p in parts])
    meta = dict(
        ensemble=config.ensemble,
        n_qubits=config.n_qubits,
        iterations=config.iterations,
        realizations=config.realizations,
        architecture=config.architecture,
    )
    return (
        StatSample(SampleLabel.SPACINGS, values=spacings, **meta),
        StatSample(SampleLabel.AMPLITUDES, values=amplitudes, **meta),
    )


def run_experiment(config, workers=None):
    """Pooled spacing and amplitude samples over all realizations.

    Realization ``r`` uses the substream ``substream_seed(seed, r)``; results
    are concatenated in realization order whatever the worker count.
    """
    workers = default_workers() if workers is None else workers
    parts = _pool_map(
        realization_statistics, [(config, r) for r in range(config.realizations)], workers
    )
    return _pack(config, parts)


def _oracle_realization(ensemble, n_qubits, seed, realization):
    rng = make_rng(substream_seed(seed, realization))
    dim = 1 << n_qubits
    ensemble = Ensemble(ensemble)
    if ensemble is Ensemble.CUE:
        u = reference.haar_unitary(dim, rng)
    elif ensemble is Ensemble.COE:
        u = reference.haar_coe(dim, rng)
    else:
        u = reference.haar_cse(n_qubits, rng)
    return statistics_of(u, ensemble)


def run_oracle(ensemble, n_qubits, realizations, seed, workers=None):
    """Same statistics as :func:`run_experiment` for exact Haar-measure draws."""
    config = ExperimentConfig(ensemble, n_qubits=n_qubits, iterations=0, realizations=realizations, seed=seed)
    workers = default_workers() if workers is None else workers
    args = [(config.ensemble, n_qubits, seed, r) for r in range(realizations)]
    return _pack(config, _pool_map(_oracle_realization, args, workers))
