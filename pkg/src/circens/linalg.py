"""Dense complex matrix helpers and a unitary eigensolver.

Operators are plain ``numpy`` complex128 arrays. Qubit 1 is the most
significant bit of a basis index, so ``kron(a, b)`` puts ``a`` on the
leading qubits.
"""

import numpy as np
import scipy.linalg

__all__ = [
    "NumericalError",
    "SpectralDecomposition",
    "as_matrix",
    "matmul",
    "kron",
    "transpose",
    "adjoint",
    "conj",
    "unitarity_defect",
    "eig_unitary",
    "bit_reversal_permutation",
]

TWO_PI = 2.0 * np.pi

# cos(theta) clusters closer than this are split with the sine part
CLUSTER_GAP = 1e-8
RESIDUAL_BOUND = 1e-9


class NumericalError(RuntimeError):
    """A numerical accuracy contract could not be met."""


def as_matrix(a):
    """Return `a` as a finite 2-d complex128 array."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def transpose(a):
    return as_matrix(a).T.copy()


def adjoint(a):
    return as_matrix(a).conj().T.copy()


def conj(a):
    return as_matrix(a).conj()


def _require_square(a):
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")


def unitarity_defect(u):
    """Max-norm of ``u^dagger u - I``."""
    u = as_matrix(u)
    _require_square(u)
    g = u.conj().T @ u
    g[np.diag_indices_from(g)] -= 1.0
    return float(np.max(np.abs(g)))


class SpectralDecomposition:
    """Eigenangles and eigenvectors of a unitary matrix.

    Attributes
    ----------
    angles : ndarray
        Eigenangles in ``[0, 2*pi)``, ascending. The eigenvalue belonging to
        ``angles[k]`` is ``exp(1j * angles[k])``.
    vectors : ndarray
        Column ``k`` is the unit eigenvector for ``angles[k]``.
    residual : float
        ``max_k ||U v_k - exp(i theta_k) v_k||_2``.
    """

    __slots__ = ("angles", "vectors", "residual")

    def __init__(self, angles, vectors, residual):
        self.angles = np.asarray(angles, dtype=float)
        self.vectors = np.asarray(vectors, dtype=np.complex128)
        self.residual = float(residual)
        self.angles.setflags(write=False)
        self.vectors.setflags(write=False)

    @property
    def dim(self):
        return self.angles.size

    @property
    def eigenvalues(self):
        return np.exp(1j * self.angles)

    def reconstruct(self):
        v = self.vectors
        return (v * self.eigenvalues) @ v.conj().T

    def __repr__(self):
        return f"SpectralDecomposition(dim={self.dim}, residual={self.residual:.2e})"


def _wrap_angles(lam):
    theta = np.arctan2(lam.imag, lam.real)
    theta = np.where(theta < 0.0, theta + TWO_PI, theta)
    # -0.0 and values rounding up to 2*pi both belong at 0
    theta[theta >= TWO_PI] = 0.0
    return theta


def _hermitian_pair_vectors(u):
    """Eigenvectors of ``u`` from the commuting pair ``(u + u^H)/2``, ``(u - u^H)/2i``."""
    uh = u.conj().T
    re_part = 0.5 * (u + uh)
    im_part = -0.5j * (u - uh)
    w, v = np.linalg.eigh(re_part)
    # runs of nearly equal cos(theta) are resolved by sin(theta)
    breaks = np.flatnonzero(np.diff(w) >= CLUSTER_GAP) + 1
    for block in np.split(np.arange(w.size), breaks):
        if block.size < 2:
            continue
        vb = v[:, block]
        sub = vb.conj().T @ im_part @ vb
        sub = 0.5 * (sub + sub.conj().T)
        _, rot = np.linalg.eigh(sub)
        v[:, block] = vb @ rot
    return v


def _schur_vectors(u):
    # for a normal matrix the complex Schur form is diagonal
    _, z = scipy.linalg.schur(u, output="complex")
    return z


def _decompose(u, v):
    lam = np.einsum("ij,ij->j", v.conj(), u @ v)
    lam /= np.abs(lam)
    theta = _wrap_angles(lam)
    order = np.argsort(theta, kind="stable")
    theta, v = theta[order], v[:, order]
    lam = np.exp(1j * theta)
    residual = np.max(np.linalg.norm(u @ v - v * lam, axis=0))
    return theta, v, residual


def eig_unitary(u):
    """Eigendecomposition of a unitary matrix.

    Diagonalizes the Hermitian real part of `u` and splits its
    near-degenerate clusters with the Hermitian imaginary part. Should that
    fail the residual bound, the complex Schur vectors are used instead.

    Raises
    ------
    ValueError
        If `u` is not square or not unitary to ``1e-9 * N``.
    NumericalError
        If no eigenbasis meeting the residual bound is found.
    """
    u = as_matrix(u)
    _require_square(u)
    n = u.shape[0]
    defect = unitarity_defect(u)
    if defect > 1e-9 * n:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e})")

    theta, v, residual = _decompose(u, _hermitian_pair_vectors(u))
    if residual > RESIDUAL_BOUND:
        theta, v, residual = _decompose(u, _schur_vectors(u))
    if residual > RESIDUAL_BOUND:
        raise NumericalError(f"eigen-residual {residual:.3e} exceeds {RESIDUAL_BOUND}")
    return SpectralDecomposition(theta, v, residual)


def bit_reversal_permutation(n_qubits):
    """Permutation matrix mapping ``|b1 ... bn>`` to ``|bn ... b1>``."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    dim = 1 << n_qubits
    idx = np.arange(dim)
    rev = np.zeros(dim, dtype=np.int64)
    for bit in range(n_qubits):
        rev |= ((idx >> bit) & 1) << (n_qubits - 1 - bit)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[rev, idx] = 1.0
    return m
