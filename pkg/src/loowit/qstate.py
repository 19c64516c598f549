"""Bipartite density matrices: validation, reductions, and state generators.

Convention used throughout the package: the joint Hilbert space is
C^dim_a ⊗ C^dim_b with the row-major product basis |i⟩_A|j⟩_B ↦ i·dim_b + j.
All operations are pure functions; arrays held by the dataclasses are made
read-only, so values are safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-10
UNIT_TRACE_TOL = 1e-10
# Eigensolvers are noisier than entrywise comparisons, so the PSD check is
# deliberately looser than the Hermiticity/trace checks.
PSD_TOL = 1e-9
STATE_NORM_TOL = 1e-10
PURITY_TOL = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A bipartite state: complex (dim_a·dim_b)² matrix plus subsystem dims.

    The constructor enforces structure only (shape and positive dims);
    the physical invariants are checked by :func:`validate`.
    """

    dim_a: int
    dim_b: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError(
                f"subsystem dimensions must be positive, got ({self.dim_a}, {self.dim_b})"
            )
        data = np.array(self.data, dtype=complex)
        n = self.dim_a * self.dim_b
        if data.shape != (n, n):
            raise ValueError(
                f"state matrix must be {n}x{n} for dims "
                f"({self.dim_a}, {self.dim_b}), got {data.shape}"
            )
        object.__setattr__(self, "data", _frozen(data))

    @property
    def total_dim(self) -> int:
        return self.dim_a * self.dim_b

    def as_tensor(self) -> np.ndarray:
        """View as a (dim_a, dim_b, dim_a, dim_b) tensor: [i,j,k,l] = ⟨ij|ρ|kl⟩."""
        return self.data.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)


class Violation(NamedTuple):
    """One failed state invariant together with its measured residual."""

    invariant: str
    residual: float


def validate(rho: DensityMatrix) -> list[Violation]:
    """Check the three density-matrix invariants.

    Returns an empty list iff ``rho`` is Hermitian (within 1e-10), has unit
    trace (within 1e-10) and is positive semidefinite (smallest eigenvalue
    ≥ -1e-9).  Structural problems (wrong shape) are rejected by the
    DensityMatrix constructor instead.
    """
    m = rho.data
    out: list[Violation] = []
    herm = float(np.abs(m - m.conj().T).max())
    if herm > HERMITICITY_TOL:
        out.append(Violation("hermitian", herm))
    tr = abs(complex(np.trace(m)) - 1.0)
    if tr > UNIT_TRACE_TOL:
        out.append(Violation("unit_trace", float(tr)))
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
    if min_eig < -PSD_TOL:
        out.append(Violation("positive_semidefinite", -min_eig))
    return out


def _subsystem_index(subsystem: str) -> int:
    s = str(subsystem).upper()
    if s not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return 0 if s == "A" else 1


def partial_trace(rho: DensityMatrix, subsystem: str) -> np.ndarray:
    """Trace out one subsystem; returns the reduced state of the other.

    ``subsystem`` names the party traced *over*: partial_trace(rho, "B")
    returns the dim_a × dim_a reduced state of A.
    """
    t = rho.as_tensor()
    if _subsystem_index(subsystem) == 1:
        return np.trace(t, axis1=1, axis2=3)
    return np.trace(t, axis1=0, axis2=2)


def partial_transpose(rho: DensityMatrix, subsystem: str) -> np.ndarray:
    """Transpose the indices of one subsystem; Hermitian but possibly not PSD.

    A pure index permutation, so applying it twice returns the original
    matrix exactly.
    """
    t = rho.as_tensor()
    n = rho.total_dim
    if _subsystem_index(subsystem) == 0:
        return t.transpose(2, 1, 0, 3).reshape(n, n)
    return t.transpose(0, 3, 2, 1).reshape(n, n)


def realign(rho: DensityMatrix) -> np.ndarray:
    """Rearrange ρ into the dim_a² × dim_b² realigned matrix.

    Entry at row (i,k), column (j,l) equals ⟨ij|ρ|kl⟩.  Its trace norm is
    the realignment-criterion quantity: > 1 certifies entanglement.
    """
    t = rho.as_tensor()
    return t.transpose(0, 2, 1, 3).reshape(rho.dim_a**2, rho.dim_b**2)


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values (Ky Fan / nuclear norm)."""
    return float(np.linalg.svd(m, compute_uv=False).sum())


def purity(m: np.ndarray) -> float:
    """Tr(m²) for a Hermitian matrix."""
    return float(np.real(np.trace(m @ m)))


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """ψ = Σ_k c_k |a_k⟩|b_k⟩ with c non-increasing, Σ c² = 1.

    ``basis_a`` / ``basis_b`` hold the orthonormal vectors as rows, one row
    per coefficient (min(dim_a, dim_b) of them, zeros included).
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _frozen(np.array(self.coefficients, dtype=float)))
        object.__setattr__(self, "basis_a", _frozen(np.array(self.basis_a, dtype=complex)))
        object.__setattr__(self, "basis_b", _frozen(np.array(self.basis_b, dtype=complex)))

    def reconstruct(self) -> np.ndarray:
        """The state vector Σ_k c_k |a_k⟩ ⊗ |b_k⟩."""
        return sum(
            c * np.kron(a, b)
            for c, a, b in zip(self.coefficients, self.basis_a, self.basis_b)
        )


def pure_state_vector(state, dim_a: int | None = None, dim_b: int | None = None):
    """Coerce a pure-state input to a normalized vector plus dims.

    Accepts a state vector, a DensityMatrix, or a raw projector matrix
    (then dims are required).  Projectors must have purity Tr ρ² ≥ 1 - 1e-8;
    the dominant eigenvector is extracted.  Returns (psi, dim_a, dim_b).
    """
    if isinstance(state, DensityMatrix):
        mat, dim_a, dim_b = state.data, state.dim_a, state.dim_b
    else:
        arr = np.asarray(state, dtype=complex)
        if arr.ndim == 1:
            if dim_a is None or dim_b is None:
                raise ValueError("dim_a and dim_b are required for a bare state vector")
            if dim_a * dim_b != arr.size:
                raise ValueError(
                    f"vector of length {arr.size} does not match dims ({dim_a}, {dim_b})"
                )
            norm = float(np.linalg.norm(arr))
            if abs(norm - 1.0) > STATE_NORM_TOL:
                raise ValueError(f"state vector is not normalized: norm = {norm!r}")
            return arr, dim_a, dim_b
        if dim_a is None or dim_b is None:
            raise ValueError("dim_a and dim_b are required for a raw matrix")
        mat = arr
    p = purity(mat)
    if p < 1.0 - PURITY_TOL:
        raise ValueError(f"not a pure state: Tr rho^2 = {p!r}")
    eigvals, eigvecs = np.linalg.eigh((mat + mat.conj().T) / 2)
    psi = eigvecs[:, -1]
    return psi / np.linalg.norm(psi), dim_a, dim_b


def schmidt(psi, dim_a: int | None = None, dim_b: int | None = None) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite pure state.

    ``psi`` may be a vector (normalized within 1e-10), a DensityMatrix, or a
    projector matrix.  Coefficients come back non-increasing and reconstruct
    the input vector within 1e-9.
    """
    vec, da, db = pure_state_vector(psi, dim_a, dim_b)
    u, s, vh = np.linalg.svd(vec.reshape(da, db))
    r = min(da, db)
    return SchmidtDecomposition(s[:r], u[:, :r].T, vh[:r, :])


def pure_state(psi, dim_a: int, dim_b: int) -> DensityMatrix:
    """Projector |ψ⟩⟨ψ| as a DensityMatrix (ψ normalized within 1e-10)."""
    vec, da, db = pure_state_vector(np.asarray(psi, dtype=complex), dim_a, dim_b)
    return DensityMatrix(da, db, np.outer(vec, vec.conj()))


# ---------------------------------------------------------------------------
# canonical states


def _ket(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return v


def _bell() -> DensityMatrix:
    psi = (np.kron(_ket(2, 0), _ket(2, 0)) + np.kron(_ket(2, 1), _ket(2, 1))) / np.sqrt(2)
    return pure_state(psi, 2, 2)


def _noisy_singlet(p: float) -> DensityMatrix:
    singlet = (np.kron(_ket(2, 0), _ket(2, 1)) - np.kron(_ket(2, 1), _ket(2, 0))) / np.sqrt(2)
    k00 = np.kron(_ket(2, 0), _ket(2, 0))
    k01 = np.kron(_ket(2, 0), _ket(2, 1))
    sep = 2 / 3 * np.outer(k00, k00.conj()) + 1 / 3 * np.outer(k01, k01.conj())
    data = p * np.outer(singlet, singlet.conj()) + (1 - p) * sep
    return DensityMatrix(2, 2, data)


def _upb() -> DensityMatrix:
    """3×3 bound entangled state built from the five-tile unextendible product basis."""
    k = lambda i: _ket(3, i)
    s2 = 1 / np.sqrt(2)
    tiles = [
        np.kron(k(0), s2 * (k(0) - k(1))),
        np.kron(s2 * (k(0) - k(1)), k(2)),
        np.kron(k(2), s2 * (k(1) - k(2))),
        np.kron(s2 * (k(1) - k(2)), k(0)),
        np.kron((k(0) + k(1) + k(2)) / np.sqrt(3), (k(0) + k(1) + k(2)) / np.sqrt(3)),
    ]
    proj = sum(np.outer(t, t.conj()) for t in tiles)
    return DensityMatrix(3, 3, (np.eye(9) - proj) / 4)


def white_noise_mixture(rho: DensityMatrix, p: float) -> DensityMatrix:
    """p·ρ + (1-p)·I/n, the one-parameter white-noise family around ρ."""
    _check_unit_interval(p)
    n = rho.total_dim
    return DensityMatrix(rho.dim_a, rho.dim_b, p * rho.data + (1 - p) * np.eye(n) / n)


def mixture(rho_1: DensityMatrix, rho_2: DensityMatrix, p: float) -> DensityMatrix:
    """Convex mixture p·ρ₁ + (1-p)·ρ₂ of two states with equal dims."""
    _check_unit_interval(p)
    if (rho_1.dim_a, rho_1.dim_b) != (rho_2.dim_a, rho_2.dim_b):
        raise ValueError(
            f"mixture requires equal dims, got ({rho_1.dim_a}, {rho_1.dim_b}) "
            f"and ({rho_2.dim_a}, {rho_2.dim_b})"
        )
    return DensityMatrix(rho_1.dim_a, rho_1.dim_b, p * rho_1.data + (1 - p) * rho_2.data)


def _check_unit_interval(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {p!r}")


STATE_NAMES = ("bell", "noisy_singlet", "upb", "upb_noise")


def make_state(name: str, p: float | None = None) -> DensityMatrix:
    """Canonical state generators.

    - ``bell``: (|00⟩+|11⟩)/√2 projector.
    - ``noisy_singlet``: p·|ψ_s⟩⟨ψ_s| + (1-p)·(2/3·|00⟩⟨00| + 1/3·|01⟩⟨01|)
      with ψ_s = (|01⟩-|10⟩)/√2; requires p.
    - ``upb``: the 3×3 bound entangled tiles-UPB state.
    - ``upb_noise``: p·upb + (1-p)·I/9; requires p.
    """
    if name == "bell":
        return _bell()
    if name == "noisy_singlet":
        if p is None:
            raise ValueError("noisy_singlet requires the mixing parameter p")
        _check_unit_interval(p)
        return _noisy_singlet(p)
    if name == "upb":
        return _upb()
    if name == "upb_noise":
        if p is None:
            raise ValueError("upb_noise requires the mixing parameter p")
        return white_noise_mixture(_upb(), p)
    raise ValueError(f"unknown state name {name!r}; known: {', '.join(STATE_NAMES)}")


# ---------------------------------------------------------------------------
# random sampling (seeded, for property tests)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def haar_state_vector(dim: int, rng) -> np.ndarray:
    """Haar-distributed pure state: normalized complex Gaussian vector."""
    g = _rng(rng)
    v = g.standard_normal(dim) + 1j * g.standard_normal(dim)
    return v / np.linalg.norm(v)


def haar_unitary(dim: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    g = _rng(rng)
    z = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_state(dim_a: int, dim_b: int, rng) -> DensityMatrix:
    return pure_state(haar_state_vector(dim_a * dim_b, _rng(rng)), dim_a, dim_b)


def random_mixed_state(dim_a: int, dim_b: int, rng, rank: int | None = None) -> DensityMatrix:
    """Mixed state as the partial trace of a larger Haar pure state."""
    g = _rng(rng)
    n = dim_a * dim_b
    r = n if rank is None else rank
    m = haar_state_vector(n * r, g).reshape(n, r)
    return DensityMatrix(dim_a, dim_b, m @ m.conj().T)


def random_product_state(dim_a: int, dim_b: int, rng) -> DensityMatrix:
    g = _rng(rng)
    psi = np.kron(haar_state_vector(dim_a, g), haar_state_vector(dim_b, g))
    return pure_state(psi, dim_a, dim_b)


def random_separable_state(dim_a: int, dim_b: int, rng, max_terms: int = 9) -> DensityMatrix:
    """Convex mixture of up to ``max_terms`` random product states."""
    g = _rng(rng)
    k = int(g.integers(1, max_terms + 1))
    weights = g.dirichlet(np.ones(k))
    data = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for w in weights:
        data += w * random_product_state(dim_a, dim_b, g).data
    return DensityMatrix(dim_a, dim_b, data)


def local_unitary_conjugate(rho: DensityMatrix, u_a: np.ndarray, u_b: np.ndarray) -> DensityMatrix:
    """(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†."""
    u = np.kron(u_a, u_b)
    return DensityMatrix(rho.dim_a, rho.dim_b, u @ rho.data @ u.conj().T)


# ---------------------------------------------------------------------------
# state file format (shared with the CLI)
#
# JSON document: {"dims": [d_a, d_b], "matrix": [[[re, im], ...], ...]},
# matrix row-major over the product basis.  NaN/Inf are rejected.


def state_to_document(rho: DensityMatrix) -> dict:
    matrix = [
        [[float(z.real), float(z.imag)] for z in row]
        for row in rho.data
    ]
    return {"dims": [rho.dim_a, rho.dim_b], "matrix": matrix}


def state_from_document(doc) -> DensityMatrix:
    if not isinstance(doc, dict) or "dims" not in doc or "matrix" not in doc:
        raise ValueError("state document must contain 'dims' and 'matrix' fields")
    dims = doc["dims"]
    if not (isinstance(dims, (list, tuple)) and len(dims) == 2):
        raise ValueError(f"dims must be a pair [d_a, d_b], got {dims!r}")
    da, db = int(dims[0]), int(dims[1])
    n = da * db
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or len(matrix) != n:
        raise ValueError(f"matrix must have {n} rows for dims {dims!r}")
    data = np.empty((n, n), dtype=complex)
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix row {i} must have {n} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError(f"matrix entry ({i}, {j}) must be a [real, imag] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ValueError(f"non-finite value in matrix entry ({i}, {j})")
            data[i, j] = complex(re, im)
    return DensityMatrix(da, db, data)


def _reject_constant(token: str):
    raise ValueError(f"non-finite number {token!r} in state file")


def load_state(path_or_file) -> DensityMatrix:
    """Read a state file (see module notes for the JSON schema)."""
    if hasattr(path_or_file, "read"):
        doc = json.load(path_or_file, parse_constant=_reject_constant)
    else:
        with open(path_or_file, "r", encoding="utf-8") as fh:
            doc = json.load(fh, parse_constant=_reject_constant)
    return state_from_document(doc)


def dump_state(rho: DensityMatrix, fh: IO[str]) -> None:
    json.dump(state_to_document(rho), fh, allow_nan=False)
    fh.write("\n")


def save_state(rho: DensityMatrix, path) -> None:
    """Write a state file; floats are printed so they round-trip exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        dump_state(rho, fh)
