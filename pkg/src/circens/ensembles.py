"""Pseudo-random circular-ensemble operators built from gate sequences.

A realization is fully described by a :class:`CircuitSpec`: per-layer SU(2)
rotation angles plus nearest-neighbour coupling constants. From it we build

* CUE: ``L_m D L_{m-1} D ... D L_0`` (rotation layers ``L``, coupler ``D``),
* COE: ``U^T U`` with ``U^T`` realized gate by gate in reverse order,
* CSE: ``-Z U^T Z U`` for an antisymmetric unitary ``Z``.

Qubits are indexed ``0 .. n-1`` from the most significant bit of the basis
index. Bonds are indexed ``0 .. n-2``; bond ``j`` couples qubits ``j`` and
``j + 1``.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import TWO_PI

__all__ = [
    "Architecture",
    "Ensemble",
    "ZMode",
    "CircuitSpec",
    "DEFAULT_COUPLING",
    "BROKEN_COUPLING",
    "make_rng",
    "substream_seed",
    "su2_rotation",
    "theta_from_xi",
    "sample_rotation_triple",
    "alternating_layout",
    "species_of_qubits",
    "check_z_mode",
    "make_spec",
    "nnc_phases",
    "nnc_operator",
    "layer_rotation",
    "apply_single_qubit_gates",
    "build_cue",
    "build_transpose_circuit",
    "build_coe",
    "z_single",
    "z_factors",
    "z_qubits",
    "z_operator",
    "partner_mask",
    "build_cse",
    "build",
]

DEFAULT_COUPLING = np.pi / 4
BROKEN_COUPLING = np.pi / 5


class Architecture(enum.Enum):
    CIRCUIT = "circuit"
    QCA_ONE = "qca1"
    QCA_TWO = "qca2"

    @property
    def n_species(self):
        return {"circuit": None, "qca1": 1, "qca2": 2}[self.value]


class Ensemble(enum.Enum):
    CUE = "CUE"
    COE = "COE"
    CSE = "CSE"


class ZMode(enum.Enum):
    """Where the ``z`` block of the time-reversal operator acts.

    ``STANDARD`` puts it on the least significant qubit only. ``QCA_ALL``
    applies it to every qubit (odd ``n`` only). ``QCA_SPECIES`` applies it to
    whichever of the two species has an odd number of qubits.
    """

    STANDARD = "standard"
    QCA_ALL = "qca-all"
    QCA_SPECIES = "qca-species"

    @classmethod
    def default_for(cls, architecture):
        return {
            Architecture.CIRCUIT: cls.STANDARD,
            Architecture.QCA_ONE: cls.QCA_ALL,
            Architecture.QCA_TWO: cls.QCA_SPECIES,
        }[Architecture(architecture)]


# ---------------------------------------------------------------------------
# random numbers

def substream_seed(seed, realization):
    """64-bit seed of realization `realization` derived from `seed`.

    The mix is ``SeedSequence([seed, realization]).generate_state(1, uint64)``,
    so substreams are independent of how realizations are scheduled.
    """
    ss = np.random.SeedSequence([int(seed), int(realization)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    """PCG64 generator; ``Generator.random`` uses the top 53 bits of each draw."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def theta_from_xi(xi):
    return np.arcsin(np.sqrt(xi))


def sample_rotation_triple(rng):
    """Draw ``(theta, phi, psi)``; the raw uniforms are consumed as phi, psi, xi."""
    phi, psi, xi = rng.random(3)
    return float(theta_from_xi(xi)), float(TWO_PI * phi), float(TWO_PI * psi)


def su2_rotation(theta, phi, psi):
    """Random-rotation parameterization of SU(2)."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [np.exp(1j * phi) * c, np.exp(1j * psi) * s],
            [-np.exp(-1j * psi) * s, np.exp(-1j * phi) * c],
        ],
        dtype=np.complex128,
    )


# ---------------------------------------------------------------------------
# specs

def alternating_layout(n_qubits):
    return "".join("AB"[q % 2] for q in range(n_qubits))


def _check_layout(layout, n_qubits):
    if len(layout) != n_qubits or set(layout) - {"A", "B"}:
        raise ValueError(f"species layout {layout!r} must be {n_qubits} letters from 'AB'")
    return layout


def species_of_qubits(architecture, n_qubits, layout=None):
    """Row of the angle table used by each qubit.

    Two-species chains default to the alternating layout ``ABAB...``; an
    explicit `layout` string such as ``"ABABABB"`` overrides it.
    """
    architecture = Architecture(architecture)
    q = np.arange(n_qubits)
    if architecture is Architecture.CIRCUIT:
        return q
    if architecture is Architecture.QCA_ONE:
        return np.zeros(n_qubits, dtype=int)
    layout = _check_layout(layout or alternating_layout(n_qubits), n_qubits)
    return np.array([layout[i] == "B" for i in q], dtype=int)


def _n_groups(architecture, n_qubits):
    n_species = Architecture(architecture).n_species
    return n_qubits if n_species is None else n_species


@dataclass(frozen=True)
class CircuitSpec:
    """All parameters of one pseudo-random realization.

    ``angles[i, g]`` is the ``(theta, phi, psi)`` triple of rotation layer
    ``i`` for group ``g``; a group is a qubit on the circuit architecture and
    a species on the QCA architectures.
    """

    architecture: Architecture
    n_qubits: int
    iterations: int
    angles: np.ndarray
    couplings: tuple = field(default=())
    seed: int = 0
    species_layout: str = None

    def __post_init__(self):
        object.__setattr__(self, "architecture", Architecture(self.architecture))
        angles = np.array(self.angles, dtype=float)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "couplings", tuple(float(c) for c in self.couplings))
        angles.setflags(write=False)

        n, m = self.n_qubits, self.iterations
        if n < 1:
            raise ValueError("n_qubits must be >= 1")
        if m < 0:
            raise ValueError("iterations must be >= 0")
        expected = (m + 1, _n_groups(self.architecture, n), 3)
        if angles.shape != expected:
            raise ValueError(f"angle table has shape {angles.shape}, expected {expected}")
        if len(self.couplings) != n - 1:
            raise ValueError(f"need {n - 1} couplings, got {len(self.couplings)}")
        theta, phi, psi = angles[..., 0], angles[..., 1], angles[..., 2]
        if np.any((theta < 0) | (theta > np.pi / 2)):
            raise ValueError("theta outside [0, pi/2]")
        if np.any((phi < 0) | (phi >= TWO_PI) | (psi < 0) | (psi >= TWO_PI)):
            raise ValueError("phi/psi outside [0, 2 pi)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.architecture is Architecture.QCA_TWO:
            layout = _check_layout(self.species_layout or alternating_layout(n), n)
            object.__setattr__(self, "species_layout", layout)
        elif self.species_layout is not None:
            raise ValueError("species_layout only applies to two-species QCA")

    @property
    def dim(self):
        return 1 << self.n_qubits

    @property
    def n_independent_variables(self):
        """Rotation angles plus distinct coupling constants.

        With uniform couplings this is ``3 n (m + 1) + 1`` on the circuit
        architecture. A chain without bonds still counts its one (unused)
        coupling constant.
        """
        return self.angles.size + max(1, len(set(self.couplings)))

    def layer_matrices(self, layer):
        """Per-qubit 2x2 rotations of one layer, qubit 0 first."""
        if not 0 <= layer <= self.iterations:
            raise IndexError(f"layer {layer} outside 0..{self.iterations}")
        groups = [su2_rotation(*t) for t in self.angles[layer]]
        species = species_of_qubits(self.architecture, self.n_qubits, self.species_layout)
        return [groups[g] for g in species]


def make_spec(architecture, n_qubits, iterations, seed, coupling_override=None, species_layout=None):
    """Draw a spec from `seed`.

    Angles are filled layer by layer, and within a layer by ascending
    qubit/species index, each triple consuming ``(phi, psi, xi)``.
    `coupling_override` is ``(bond, value)``; all other bonds get pi/4.
    `species_layout` is only meaningful for two-species QCA.
    """
    architecture = Architecture(architecture)
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    couplings = [DEFAULT_COUPLING] * (n_qubits - 1)
    if coupling_override is not None:
        bond, value = coupling_override
        if not 0 <= bond < n_qubits - 1:
            raise ValueError(f"bond index {bond} outside 0..{n_qubits - 2}")
        couplings[bond] = float(value)

    rng = make_rng(seed)
    groups = _n_groups(architecture, n_qubits)
    angles = np.array(
        [[sample_rotation_triple(rng) for _ in range(groups)] for _ in range(iterations + 1)]
    ).reshape(iterations + 1, groups, 3)
    return CircuitSpec(
        architecture, n_qubits, iterations, angles, tuple(couplings), int(seed), species_layout
    )


# ---------------------------------------------------------------------------
# gates

def nnc_phases(n_qubits, couplings):
    """Diagonal of the nearest-neighbour coupler ``exp(i sum_j c_j Z_j Z_{j+1})``."""
    couplings = np.asarray(couplings, dtype=float)
    if couplings.shape != (n_qubits - 1,):
        raise ValueError(f"need {n_qubits - 1} couplings, got {couplings.size}")
    idx = np.arange(1 << n_qubits)
    # spin of qubit q: +1 for bit 0, -1 for bit 1; qubit 0 is the top bit
    spins = 1 - 2 * ((idx[:, None] >> (n_qubits - 1 - np.arange(n_qubits))) & 1)
    energy = (spins[:, :-1] * spins[:, 1:]) @ couplings
    return np.exp(1j * energy)


def nnc_operator(n_qubits, couplings):
    return np.diag(nnc_phases(n_qubits, couplings))


def layer_rotation(spec, layer):
    """Dense matrix of one rotation layer (tensor product over qubits)."""
    out = np.ones((1, 1), dtype=np.complex128)
    for r in spec.layer_matrices(layer):
        out = np.kron(out, r)
    return out


def apply_single_qubit_gates(mat, gates):
    """Left-multiply `mat` by ``kron(gates[0], ..., gates[n-1])``.

    ``None`` entries are identities. Works one qubit at a time, so it costs
    ``O(n N^2)`` instead of a dense ``O(N^3)`` product.
    """
    n = len(gates)
    dim, cols = mat.shape
    out = mat
    for q, g in enumerate(gates):
        if g is None:
            continue
        view = out.reshape(1 << q, 2, (dim >> (q + 1)) * cols)
        out = np.matmul(g, view).reshape(dim, cols)
    return out


def build_cue(spec):
    """Pseudo-random CUE operator: rotation layer, coupler, ..., final rotation layer."""
    phases = nnc_phases(spec.n_qubits, spec.couplings)[:, None]
    u = apply_single_qubit_gates(np.eye(spec.dim, dtype=np.complex128), spec.layer_matrices(0))
    for layer in range(1, spec.iterations + 1):
        u = apply_single_qubit_gates(phases * u, spec.layer_matrices(layer))
    return u


def build_transpose_circuit(spec):
    """``build_cue(spec).T``, applying the transposed gates in reverse order.

    The coupler is diagonal and hence its own transpose.
    """
    phases = nnc_phases(spec.n_qubits, spec.couplings)[:, None]
    m = spec.iterations

    def transposed(layer):
        return [r.T for r in spec.layer_matrices(layer)]

    u = apply_single_qubit_gates(np.eye(spec.dim, dtype=np.complex128), transposed(m))
    for layer in range(m - 1, -1, -1):
        u = apply_single_qubit_gates(phases * u, transposed(layer))
    return u


def build_coe(spec):
    return build_transpose_circuit(spec) @ build_cue(spec)


# ---------------------------------------------------------------------------
# time reversal

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def z_factors():
    """The two rotations ``exp(-i pi/2 sigma_z)`` and ``exp(-i pi/2 sigma_x)``.

    Both are evaluated as ``cos(pi/2) I - i sin(pi/2) sigma`` with the cosine
    set to its exact value 0, so their product is exactly ``z_single()``.
    """
    return -1j * _SIGMA_Z, -1j * _SIGMA_X


def z_single():
    rz, rx = z_factors()
    return rz @ rx


def z_qubits(n_qubits, mode, species_layout=None):
    """Qubits carrying the ``z`` block for the given mode.

    For ``QCA_SPECIES`` the species (A checked first) with an odd number of
    qubits carries it.
    """
    mode = ZMode(mode)
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    if mode is ZMode.STANDARD:
        return [n_qubits - 1]
    if mode is ZMode.QCA_ALL:
        if n_qubits % 2 == 0:
            raise ValueError("z on all qubits needs an odd qubit count (Z Z* = +I otherwise)")
        return list(range(n_qubits))
    layout = _check_layout(species_layout or alternating_layout(n_qubits), n_qubits)
    for name in "AB":
        qubits = [q for q in range(n_qubits) if layout[q] == name]
        if len(qubits) % 2 == 1:
            return qubits
    raise ValueError(f"no species of layout {layout!r} has an odd number of qubits")


def partner_mask(n_qubits, mode, species_layout=None):
    """Bit mask ``x`` such that ``Z |k> = +-|k ^ x>``."""
    return sum(1 << (n_qubits - 1 - q) for q in z_qubits(n_qubits, mode, species_layout))


def _z_gates(n_qubits, mode, species_layout=None):
    z = z_single()
    gates = [None] * n_qubits
    for q in z_qubits(n_qubits, mode, species_layout):
        gates[q] = z
    return gates


def z_operator(n_qubits, mode=ZMode.STANDARD, species_layout=None):
    """Antisymmetric unitary ``Z`` with ``Z Z* = -I``."""
    dim = 1 << n_qubits
    gates = _z_gates(n_qubits, mode, species_layout)
    return apply_single_qubit_gates(np.eye(dim, dtype=np.complex128), gates)


_ALLOWED_Z_MODES = {
    Architecture.CIRCUIT: {ZMode.STANDARD, ZMode.QCA_ALL, ZMode.QCA_SPECIES},
    # a single qubit cannot be addressed on a QCA
    Architecture.QCA_ONE: {ZMode.QCA_ALL},
    Architecture.QCA_TWO: {ZMode.QCA_ALL, ZMode.QCA_SPECIES},
}


def check_z_mode(architecture, n_qubits, mode, species_layout=None):
    architecture, mode = Architecture(architecture), ZMode(mode)
    if mode not in _ALLOWED_Z_MODES[architecture]:
        raise ValueError(f"z mode {mode.value!r} cannot be used on architecture {architecture.value!r}")
    z_qubits(n_qubits, mode, species_layout)


def build_cse(spec, z_mode=ZMode.STANDARD):
    """Pseudo-random CSE operator ``-Z U^T Z U``.

    The overall minus sign is kept so that the result is exactly self-dual,
    ``-Z U_cse^T Z == U_cse``.
    """
    check_z_mode(spec.architecture, spec.n_qubits, z_mode, spec.species_layout)
    gates = _z_gates(spec.n_qubits, z_mode, spec.species_layout)
    u = build_cue(spec)
    w = build_transpose_circuit(spec) @ apply_single_qubit_gates(u, gates)
    return -apply_single_qubit_gates(w, gates)


def build(spec, ensemble, z_mode=None):
    """Dispatch on `ensemble`; `z_mode` defaults per architecture for CSE."""
    ensemble = Ensemble(ensemble)
    if ensemble is Ensemble.CUE:
        return build_cue(spec)
    if ensemble is Ensemble.COE:
        return build_coe(spec)
    if z_mode is None:
        z_mode = ZMode.default_for(spec.architecture)
    return build_cse(spec, z_mode)
