"""Target distributions and an exact Haar-measure oracle.

Spacing surmises for the three circular ensembles all have the form
``A s^b exp(-c s^2)``, and the amplitude laws are unit-mean chi-squared
densities with ``nu = 1, 2, 4`` degrees of freedom. Both families have
incomplete-gamma CDFs, which are used for evaluation; an independent
quadrature CDF is kept alongside for cross-checking.
"""

import bisect
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .ensembles import Ensemble, ZMode, z_operator

__all__ = [
    "CurveKind",
    "DistributionCurve",
    "spacing_surmise",
    "amplitude_law",
    "reference_curve",
    "sample_curve",
    "haar_unitary",
    "haar_coe",
    "haar_cse",
]

_BETA = {Ensemble.COE: 1, Ensemble.CUE: 2, Ensemble.CSE: 4}


class CurveKind(enum.Enum):
    SPACING = "spacing"
    AMPLITUDE = "amplitude"


@dataclass(frozen=True)
class DistributionCurve:
    """A unit-mean density on ``[0, inf)``.

    ``cdf`` is ``P(shape, scale * x**power)`` with ``P`` the regularized lower
    incomplete gamma function; ``pdf`` is written out in closed form.
    """

    kind: CurveKind
    ensemble: Ensemble
    pdf: object
    shape: float
    scale: float
    power: int
    _grid: list = field(default_factory=lambda: [0.0], repr=False, compare=False)
    _cumulative: list = field(default_factory=lambda: [0.0], repr=False, compare=False)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, None)
        return special.gammainc(self.shape, self.scale * x**self.power)

    def ppf(self, u, iterations=80):
        """Inverse CDF by vectorized bisection on :meth:`cdf`."""
        u = np.asarray(u, dtype=float)
        lo = np.zeros_like(u)
        hi = np.ones_like(u)
        while np.any(self.cdf(hi) < u):
            hi = np.where(self.cdf(hi) < u, 2 * hi, hi)
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            below = self.cdf(mid) < u
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def quad_cdf(self, x, step=0.5, epsabs=1e-10):
        """CDF by adaptive quadrature of the pdf, reusing a cached node grid."""
        x = float(x)
        if x <= 0:
            return 0.0
        while self._grid[-1] + step <= x:
            a = self._grid[-1]
            piece, _ = integrate.quad(self.pdf, a, a + step, epsabs=epsabs, epsrel=1e-12, limit=200)
            self._grid.append(a + step)
            self._cumulative.append(self._cumulative[-1] + piece)
        j = bisect.bisect_right(self._grid, x) - 1
        rest, _ = integrate.quad(self.pdf, self._grid[j], x, epsabs=epsabs, epsrel=1e-12, limit=200)
        return self._cumulative[j] + rest


def spacing_surmise(ensemble):
    """Wigner surmise for the nearest-neighbour spacing of an ensemble."""
    ensemble = Ensemble(ensemble)
    pi = math.pi
    if ensemble is Ensemble.COE:
        amp, c = pi / 2, pi / 4
    elif ensemble is Ensemble.CUE:
        amp, c = 32 / pi**2, 4 / pi
    else:
        c = 64 / (9 * pi)
        amp = c**3
    beta = _BETA[ensemble]

    def pdf(s):
        s = np.asarray(s, dtype=float)
        return np.where(s < 0, 0.0, amp * np.abs(s) ** beta * np.exp(-c * s * s))

    return DistributionCurve(CurveKind.SPACING, ensemble, pdf, (beta + 1) / 2, c, 2)


def amplitude_law(ensemble):
    """Unit-mean chi-squared law of eigenvector component amplitudes."""
    ensemble = Ensemble(ensemble)
    nu = {Ensemble.COE: 1, Ensemble.CUE: 2, Ensemble.CSE: 4}[ensemble]
    half = nu / 2
    norm = half**half / math.gamma(half)

    def pdf(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            inside = norm * np.abs(y) ** (half - 1) * np.exp(-half * y)
        return np.where(y < 0, 0.0, inside)

    return DistributionCurve(CurveKind.AMPLITUDE, ensemble, pdf, half, half, 1)


def reference_curve(ensemble, kind):
    kind = CurveKind(kind)
    return spacing_surmise(ensemble) if kind is CurveKind.SPACING else amplitude_law(ensemble)


def sample_curve(curve, size, rng):
    """Draw `size` points from `curve` by CDF inversion."""
    return curve.ppf(rng.random(size))


def haar_unitary(dim, rng):
    """Haar-random unitary from the QR factorization of a Ginibre matrix.

    Column ``j`` of ``Q`` is multiplied by the phase of ``R[j, j]``, which
    makes the factorization unique and the result exactly Haar distributed.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_coe(dim, rng):
    u = haar_unitary(dim, rng)
    return u.T @ u


def haar_cse(n_qubits, rng, z_mode=ZMode.STANDARD):
    """Exact CSE sample ``-Z U^T Z U`` from a Haar unitary ``U``."""
    z = z_operator(n_qubits, z_mode)
    u = haar_unitary(1 << n_qubits, rng)
    return -z @ u.T @ z @ u
