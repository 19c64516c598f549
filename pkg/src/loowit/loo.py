"""Local orthogonal observables: complete Hermitian operator bases on one
subsystem, trace-orthonormal under Tr(G_k G_l) = δ_kl, together with the
orthogonal rotations connecting any two such bases and the operator-Schmidt
decomposition of bipartite states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .qstate import DensityMatrix, _frozen, _rng

ORTHOGONALITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LOOBasis:
    """Ordered set of dim² Hermitian dim×dim observables, stacked on axis 0."""

    dim: int
    observables: np.ndarray

    def __post_init__(self) -> None:
        obs = np.array(self.observables, dtype=complex)
        expected = (self.dim**2, self.dim, self.dim)
        if obs.shape != expected:
            raise ValueError(f"observables must have shape {expected}, got {obs.shape}")
        object.__setattr__(self, "observables", _frozen(obs))

    def __len__(self) -> int:
        return self.observables.shape[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.observables[k]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.observables)


def hermiticity_residual(basis: LOOBasis) -> float:
    """max entrywise |G_k - G_k†| over the basis."""
    obs = basis.observables
    return float(np.abs(obs - obs.conj().transpose(0, 2, 1)).max())


def orthonormality_residual(basis: LOOBasis) -> float:
    """max |Tr(G_k G_l) - δ_kl| over all pairs."""
    vecs = basis.observables.reshape(len(basis), -1)
    gram = vecs @ vecs.conj().T
    return float(np.abs(gram - np.eye(len(basis))).max())


@dataclass(frozen=True, eq=False)
class OrthogonalRotation:
    """Real orthogonal dim²×dim² matrix mapping one LOO basis to another."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"rotation must be a square matrix, got shape {m.shape}")
        residual = float(np.abs(m @ m.T - np.eye(m.shape[0])).max())
        if residual > ORTHOGONALITY_TOL:
            raise ValueError(f"matrix is not orthogonal: max |O O^T - I| = {residual!r}")
        object.__setattr__(self, "matrix", _frozen(m))


def gell_mann_basis(d: int) -> LOOBasis:
    """The standard complete LOO basis in dimension d.

    Block order: symmetric (|m⟩⟨n|+|n⟩⟨m|)/√2 for m<n, then antisymmetric
    (i|m⟩⟨n|-i|n⟩⟨m|)/√2 for m<n, then the projectors |m⟩⟨m|; each pair
    block is lexicographic in (m, n).  Note the diagonal block keeps plain
    projectors rather than traceless combinations.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    obs = np.zeros((d * d, d, d), dtype=complex)
    k = 0
    for m in range(d):
        for n in range(m + 1, d):
            obs[k, m, n] = 1 / np.sqrt(2)
            obs[k, n, m] = 1 / np.sqrt(2)
            k += 1
    for m in range(d):
        for n in range(m + 1, d):
            obs[k, m, n] = 1j / np.sqrt(2)
            obs[k, n, m] = -1j / np.sqrt(2)
            k += 1
    for m in range(d):
        obs[k, m, m] = 1.0
        k += 1
    return LOOBasis(d, obs)


def pauli_basis() -> LOOBasis:
    """{σ_x, σ_y, σ_z, I}/√2, the familiar qubit LOO basis."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    i2 = np.eye(2, dtype=complex)
    return LOOBasis(2, np.stack([sx, sy, sz, i2]) / np.sqrt(2))


def transpose_basis(basis: LOOBasis) -> LOOBasis:
    """Elementwise transpose; orthonormality is preserved."""
    return LOOBasis(basis.dim, basis.observables.transpose(0, 2, 1))


def rotate(basis: LOOBasis, rotation) -> LOOBasis:
    """New basis G̃_k = Σ_l O_kl G_l for an orthogonal O.

    ``rotation`` may be an OrthogonalRotation or a raw matrix (validated
    here; a non-orthogonal matrix raises with the ‖O·Oᵀ - I‖ residual).
    """
    if not isinstance(rotation, OrthogonalRotation):
        rotation = OrthogonalRotation(rotation)
    o = rotation.matrix
    if o.shape[0] != len(basis):
        raise ValueError(
            f"rotation size {o.shape[0]} does not match basis size {len(basis)}"
        )
    return LOOBasis(basis.dim, np.einsum("kl,lij->kij", o, basis.observables))


def haar_rotation(size: int, rng) -> OrthogonalRotation:
    """Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
    R-diagonal signs folded in."""
    g = _rng(rng)
    q, r = np.linalg.qr(g.standard_normal((size, size)))
    signs = np.sign(np.diagonal(r))
    signs[signs == 0] = 1.0
    return OrthogonalRotation(q * signs)


class OperatorSchmidt(NamedTuple):
    singular_values: np.ndarray
    basis_a: LOOBasis
    basis_b: LOOBasis


def expectation_matrix(rho: DensityMatrix, basis_a: LOOBasis, basis_b: LOOBasis) -> np.ndarray:
    """Real matrix of joint expectations Tr(ρ G_l^A ⊗ G_m^B).

    The imaginary parts vanish for Hermitian observables; a residual above
    1e-10 signals a non-Hermitian basis and raises.
    """
    if basis_a.dim != rho.dim_a or basis_b.dim != rho.dim_b:
        raise ValueError(
            f"basis dims ({basis_a.dim}, {basis_b.dim}) do not match state dims "
            f"({rho.dim_a}, {rho.dim_b})"
        )
    raw = np.einsum(
        "ijkl,aki,blj->ab",
        rho.as_tensor(),
        basis_a.observables,
        basis_b.observables,
        optimize=True,
    )
    imag = float(np.abs(raw.imag).max())
    if imag > 1e-10:
        raise ValueError(f"expectation matrix has imaginary residual {imag!r}; basis not Hermitian?")
    return np.ascontiguousarray(raw.real)


def operator_schmidt(rho: DensityMatrix) -> OperatorSchmidt:
    """ρ = Σ_k σ_k 𝒢_k^A ⊗ 𝒢_k^B with σ non-increasing and both bases LOO.

    Built from the singular value decomposition of the joint-expectation
    matrix in the standard basis.  When singular values are degenerate the
    factor pair is not unique; any valid pair may be returned.
    """
    if rho.dim_a != rho.dim_b:
        raise ValueError(
            "operator_schmidt requires equal subsystem dims; for rectangular "
            "states use witness.correlation_matrix and its singular values"
        )
    base = gell_mann_basis(rho.dim_a)
    mu = expectation_matrix(rho, base, base)
    u, s, vt = np.linalg.svd(mu)
    return OperatorSchmidt(s, rotate(base, u.T), rotate(base, vt))
