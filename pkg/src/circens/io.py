"""Matrix file formats.

Binary: ``b"CEM1"``, little-endian uint32 ``N``, then ``N*N`` complex entries
as interleaved little-endian float64 ``(re, im)``, row-major.

JSON: ``{"n_qubits": int, "dim": int, "entries": [[re, im], ...]}`` row-major.
"""

import json
import struct

import numpy as np

from .linalg import as_matrix

MAGIC = b"CEM1"


def matrix_to_bytes(mat):
    mat = as_matrix(mat)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("only square matrices can be serialized")
    return MAGIC + struct.pack("<I", n) + np.ascontiguousarray(mat, dtype="<c16").tobytes()


def matrix_from_bytes(data):
    if data[:4] != MAGIC:
        raise ValueError("not a CEM1 matrix file")
    (n,) = struct.unpack("<I", data[4:8])
    body = data[8:]
    if len(body) != 16 * n * n:
        raise ValueError(f"expected {16 * n * n} payload bytes, found {len(body)}")
    return np.frombuffer(body, dtype="<c16").reshape(n, n).astype(np.complex128)


def matrix_to_json(mat):
    mat = as_matrix(mat)
    dim = mat.shape[0]
    flat = mat.ravel()
    return json.dumps(
        {
            "n_qubits": dim.bit_length() - 1,
            "dim": dim,
            "entries": np.stack([flat.real, flat.imag], axis=1).tolist(),
        }
    )


def matrix_from_json(text):
    d = json.loads(text)
    dim = int(d["dim"])
    entries = np.asarray(d["entries"], dtype=float)
    if entries.shape != (dim * dim, 2):
        raise ValueError(f"expected {dim * dim} [re, im] entries")
    return (entries[:, 0] + 1j * entries[:, 1]).reshape(dim, dim)


def write_matrix(path, mat, fmt="bin"):
    if fmt == "bin":
        with open(path, "wb") as f:
            f.write(matrix_to_bytes(mat))
    elif fmt == "json":
        with open(path, "w") as f:
            f.write(matrix_to_json(mat))
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


def read_matrix(path):
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] == MAGIC:
        return matrix_from_bytes(data)
    return matrix_from_json(data.decode())
