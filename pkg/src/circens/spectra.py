"""Spectral statistics: unfolded spacings, eigenvector amplitudes, KS distances."""

import enum
import io
import json
from dataclasses import dataclass

import numpy as np

from .ensembles import Architecture, Ensemble, ZMode, partner_mask
from .linalg import TWO_PI, NumericalError

__all__ = [
    "KRAMERS_TOL",
    "KramersPairingError",
    "KramersPairing",
    "SampleLabel",
    "StatSample",
    "nn_spacings",
    "kramers_pair",
    "amplitudes_standard",
    "amplitudes_cse",
    "histogram",
    "histogram_csv",
    "ks_statistic",
    "ks_2samp",
]

KRAMERS_TOL = 1e-8


class KramersPairingError(NumericalError):
    """Spectrum is not doubly degenerate to the requested tolerance."""


class SampleLabel(enum.Enum):
    SPACINGS = "spacings"
    AMPLITUDES = "amplitudes"


@dataclass(frozen=True)
class StatSample:
    """Pooled scalar statistics of one experiment, normalized to unit mean."""

    label: SampleLabel
    ensemble: Ensemble
    values: np.ndarray
    n_qubits: int
    iterations: int
    realizations: int
    architecture: Architecture = Architecture.CIRCUIT

    def __post_init__(self):
        object.__setattr__(self, "label", SampleLabel(self.label))
        object.__setattr__(self, "ensemble", Ensemble(self.ensemble))
        object.__setattr__(self, "architecture", Architecture(self.architecture))
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("a sample needs a non-empty 1-d array of values")
        if np.any(values < 0):
            raise ValueError("sample values must be non-negative")

    @property
    def mean_tolerance(self):
        return 1e-12 if self.label is SampleLabel.SPACINGS else 1e-10

    def check_mean(self):
        """Raise ``NumericalError`` if the unit-mean normalization is violated."""
        mean = float(np.mean(self.values))
        if abs(mean - 1.0) > self.mean_tolerance:
            raise NumericalError(f"{self.label.value} sample has mean {mean!r}, expected 1")
        return mean

    def to_json(self):
        return json.dumps(
            {
                "label": self.label.value,
                "ensemble": self.ensemble.value,
                "architecture": self.architecture.value,
                "n_qubits": self.n_qubits,
                "iterations": self.iterations,
                "realizations": self.realizations,
                "values": self.values.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            label=d["label"],
            ensemble=d["ensemble"],
            architecture=d["architecture"],
            n_qubits=int(d["n_qubits"]),
            iterations=int(d["iterations"]),
            realizations=int(d["realizations"]),
            values=np.asarray(d["values"], dtype=float),
        )


def nn_spacings(angles):
    """Nearest-neighbour spacings on the unit circle, unfolded to unit mean.

    Includes the wrap-around gap, so ``K`` angles give ``K`` spacings; each
    is divided by the mean spacing ``2 pi / K``.
    """
    a = np.asarray(angles, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need at least 2 angles")
    if np.any(np.diff(a) < 0) or a[0] < 0 or a[-1] >= TWO_PI:
        raise ValueError("angles must be ascending in [0, 2 pi)")
    gaps = np.append(np.diff(a), TWO_PI + a[0] - a[-1])
    return gaps * (a.size / TWO_PI)


@dataclass(frozen=True)
class KramersPairing:
    distinct_angles: np.ndarray
    pair_indices: np.ndarray
    max_pair_gap: float
    tol: float = KRAMERS_TOL


def kramers_pair(decomp, tol=KRAMERS_TOL):
    """Group a doubly degenerate spectrum into Kramers pairs.

    Adjacent sorted angles are paired either as ``(0,1), (2,3), ...`` or,
    when a pair straddles ``2 pi``, as ``(1,2), ..., (K-1, 0)``.
    """
    a = np.asarray(decomp.angles, dtype=float)
    k = a.size
    if k % 2:
        raise ValueError(f"odd dimension {k} cannot be Kramers paired")
    idx = np.arange(k)
    gaps = np.append(np.diff(a), TWO_PI + a[0] - a[-1])

    candidates = []
    for offset in (0, 1):
        first = idx[offset::2]
        worst = float(np.max(gaps[first]))
        if worst <= tol:
            candidates.append((worst, offset))
    if not candidates:
        worst = min(np.max(gaps[0::2]), np.max(gaps[1::2]))
        raise KramersPairingError(f"spectrum not degenerate: smallest pairing gap {worst:.3e} > tol {tol:.1e}")
    worst, offset = min(candidates)

    first = idx[offset::2]
    second = (first + 1) % k
    means = a[first] + 0.5 * gaps[first]
    means[means >= TWO_PI] -= TWO_PI
    order = np.argsort(means, kind="stable")
    pairs = np.stack([first, second], axis=1)[order]
    return KramersPairing(means[order], pairs, worst, tol)


def amplitudes_standard(decomp):
    """``y = N |v_k|^2`` over all components of all eigenvectors."""
    v = np.asarray(decomp.vectors)
    n = v.shape[0]
    return (n * np.abs(v.T) ** 2).ravel()


def amplitudes_cse(decomp, pairing, z_mode=ZMode.STANDARD, species_layout=None):
    """Kramers-invariant amplitudes ``y = |c_k|^2 + |c_k'|^2`` rescaled by ``N/2``.

    ``k'`` is the basis state that the time-reversal operator maps ``k`` onto.
    One eigenvector per Kramers pair is used; the value does not depend on
    which vector of the degenerate plane is chosen.
    """
    v = np.asarray(decomp.vectors)
    dim = v.shape[0]
    n_qubits = dim.bit_length() - 1
    if dim != 1 << n_qubits:
        raise ValueError(f"dimension {dim} is not a power of two")
    mask = partner_mask(n_qubits, z_mode, species_layout)
    k = np.arange(dim)
    partner = k ^ mask
    lo = k[k < partner]
    w = np.abs(v[:, pairing.pair_indices[:, 0]].T) ** 2
    return ((dim / 2) * (w[:, lo] + w[:, partner[lo]])).ravel()


def histogram(values, bin_count=40, value_range=(0.0, 4.0)):
    """Histogram rows ``(left, right, count, density)`` and the out-of-range tally.

    Densities are normalized by the total sample size, so they integrate to
    the fraction of samples that fall inside `value_range`.
    """
    lo, hi = map(float, value_range)
    if bin_count < 1:
        raise ValueError("bin_count must be >= 1")
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
        raise ValueError(f"invalid range {value_range}")
    values = np.asarray(values, dtype=float)
    counts, edges = np.histogram(values, bins=bin_count, range=(lo, hi))
    width = np.diff(edges)
    density = counts / (max(values.size, 1) * width)
    rows = [
        (float(edges[i]), float(edges[i + 1]), int(counts[i]), float(density[i]))
        for i in range(bin_count)
    ]
    return rows, int(values.size - counts.sum())


def histogram_csv(values, bin_count=40, value_range=(0.0, 4.0)):
    rows, outside = histogram(values, bin_count, value_range)
    buf = io.StringIO()
    buf.write("bin_left,bin_right,count,density\n")
    for left, right, count, dens in rows:
        buf.write(f"{left!r},{right!r},{count},{dens!r}\n")
    buf.write(f"# out_of_range,{outside}\n")
    return buf.getvalue()


def ks_statistic(values, cdf):
    """One-sample Kolmogorov-Smirnov distance of `values` to `cdf`."""
    x = np.sort(np.asarray(values, dtype=float))
    k = x.size
    if k == 0:
        raise ValueError("empty sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, k + 1)
    return float(max(np.max(i / k - f), np.max(f - (i - 1) / k), 0.0))


def ks_2samp(a, b):
    """Two-sample Kolmogorov-Smirnov distance."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))
