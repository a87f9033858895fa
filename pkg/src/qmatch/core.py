"""States, operators, and spectral tools on symmetric occupation-number bases.

N identical qubits confined to their permutation-symmetric subspace are
described by N + 1 occupation amplitudes.  Everything in this module is dense
complex linear algebra on such bases and on tensor products of them; the
heavier, protocol-specific constructions live in the sibling modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

#: Tolerance for accepting a matrix as Hermitian (max absolute deviation).
HERMITICITY_ATOL = 1e-12

#: Tolerance on the squared norm of a pure state.
NORM_ATOL = 1e-12

#: Eigenvalues within this of zero count as "zero" for spectral projectors.
EIGENVALUE_ZERO_ATOL = 1e-10

#: Tolerances for probability-operator measures.
POM_PSD_ATOL = 1e-10
POM_IDENTITY_ATOL = 1e-10

ZeroPolicy = Literal["include_zero", "exclude_zero"]


def binomial(n: int, k: int) -> float:
    """Binomial coefficient C(n, k) as a float.

    Exact integer arithmetic for n <= 30; log-gamma evaluation above that,
    which avoids overflow at large n while staying within 1e-12 relative
    error.  Out-of-range k gives 0.
    """
    if k < 0 or k > n:
        return 0.0
    if n <= 30:
        return float(math.comb(n, k))
    return math.exp(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


def binomial_row(n: int) -> np.ndarray:
    """All coefficients C(n, 0..n) as a float array."""
    return np.array([binomial(n, k) for k in range(n + 1)])


@dataclass(frozen=True)
class BasisLabel:
    """Identifies an occupation-number basis or a tensor product of such bases.

    A plain occupation basis has no factors; a composite basis records the
    ordered factors it was built from, and its dimension is their product.
    """

    dimension: int
    factors: tuple["BasisLabel", ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("basis dimension must be a positive integer")
        if self.factors:
            prod = 1
            for factor in self.factors:
                prod *= factor.dimension
            if prod != self.dimension:
                raise ValueError(
                    "composite dimension %d does not match factor product %d"
                    % (self.dimension, prod)
                )

    @property
    def kind(self) -> str:
        return "composite" if self.factors else "occupation"

    @staticmethod
    def occupation(dimension: int) -> "BasisLabel":
        return BasisLabel(dimension)

    @staticmethod
    def for_copies(n_copies: int) -> "BasisLabel":
        """Symmetric basis of n_copies identical qubits (dimension n_copies + 1)."""
        if n_copies < 1:
            raise ValueError("n_copies must be >= 1")
        return BasisLabel(n_copies + 1)

    @staticmethod
    def composite(*factors: "BasisLabel") -> "BasisLabel":
        if not factors:
            raise ValueError("composite basis needs at least one factor")
        dim = 1
        for factor in factors:
            dim *= factor.dimension
        return BasisLabel(dim, tuple(factors))


@dataclass(frozen=True)
class PureState:
    """Unit vector of complex amplitudes over a declared basis."""

    basis: BasisLabel
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1).copy()
        if amp.shape[0] != self.basis.dimension:
            raise ValueError(
                "amplitude length %d does not match basis dimension %d"
                % (amp.shape[0], self.basis.dimension)
            )
        sq_norm = float(np.vdot(amp, amp).real)
        if abs(sq_norm - 1.0) > NORM_ATOL:
            raise ValueError("state is not normalized: |amplitudes|^2 = %r" % sq_norm)
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def density(self) -> np.ndarray:
        """Rank-1 density matrix |psi><psi| as a plain array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class HermitianOperator:
    """Square complex matrix, validated Hermitian, over a declared basis."""

    basis: BasisLabel
    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=np.complex128).copy()
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("entries must form a square matrix")
        if mat.shape[0] != self.basis.dimension:
            raise ValueError(
                "matrix dimension %d does not match basis dimension %d"
                % (mat.shape[0], self.basis.dimension)
            )
        deviation = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
        if deviation > HERMITICITY_ATOL:
            raise ValueError(
                "matrix is not Hermitian (max deviation %.3e)" % deviation
            )
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def expectation(self, state: PureState) -> float:
        """Real quadratic form <psi|H|psi>."""
        if state.basis != self.basis:
            raise ValueError("state and operator are defined on different bases")
        v = state.amplitudes
        return float(np.vdot(v, self.entries @ v).real)


def identity_operator(basis: BasisLabel) -> HermitianOperator:
    return HermitianOperator(basis, np.eye(basis.dimension, dtype=np.complex128))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order with matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: tuple[PureState, ...]

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=float).reshape(-1).copy()
        if vals.shape[0] != len(self.eigenvectors):
            raise ValueError("eigenvalue count does not match eigenvector count")
        if np.any(np.diff(vals) > 1e-12):
            raise ValueError("eigenvalues must be in descending order")
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", tuple(self.eigenvectors))

    def vector_matrix(self) -> np.ndarray:
        """Eigenvectors as columns, in eigenvalue order."""
        return np.column_stack([s.amplitudes for s in self.eigenvectors])

    def reconstruct(self) -> np.ndarray:
        """Sum of eigenvalue-weighted eigenprojectors."""
        v = self.vector_matrix()
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class POM:
    """Probability-operator measure: labeled positive operators summing to identity.

    Element order is meaningful (outcome sampling and serialization preserve
    it).  Labels are arbitrary hashable values; the matching strategies use
    class indices or template-phase guesses.
    """

    elements: tuple

    def __post_init__(self):
        elems = tuple((label, op) for label, op in self.elements)
        if not elems:
            raise ValueError("a POM needs at least one element")
        basis = elems[0][1].basis
        for _, op in elems:
            if op.basis != basis:
                raise ValueError("POM elements live on different bases")
        object.__setattr__(self, "elements", elems)
        margin = self.psd_margin()
        if margin < -POM_PSD_ATOL:
            raise ValueError(
                "POM element has negative eigenvalue %.3e beyond tolerance" % margin
            )
        residual = self.identity_residual()
        if residual > POM_IDENTITY_ATOL:
            raise ValueError(
                "POM elements do not resolve the identity (residual %.3e)" % residual
            )

    @property
    def basis(self) -> BasisLabel:
        return self.elements[0][1].basis

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.elements)

    def psd_margin(self) -> float:
        """Smallest eigenvalue over all elements (>= 0 up to roundoff)."""
        return min(
            float(np.linalg.eigvalsh(op.entries)[0]) for _, op in self.elements
        )

    def identity_residual(self) -> float:
        """Max absolute entry of (sum of elements - identity)."""
        total = sum(op.entries for _, op in self.elements)
        return float(np.max(np.abs(total - np.eye(self.basis.dimension))))

    def outcome_probabilities(self, state: PureState) -> np.ndarray:
        """Born-rule probabilities of each element for the given state."""
        if state.basis != self.basis:
            raise ValueError("state and POM are defined on different bases")
        v = state.amplitudes
        return np.array([float(np.vdot(v, op.entries @ v).real) for _, op in self.elements])


def phase_state(n_copies: int, phase: float) -> PureState:
    """Symmetric product of n_copies qubits, each (|0> + e^{i*phase}|1>)/sqrt(2).

    The amplitude on the k-excitation occupation state is
    sqrt(C(n, k) / 2^n) * e^{i k phase}; the result is 2*pi-periodic in phase.
    """
    if n_copies < 1:
        raise ValueError("n_copies must be >= 1")
    k = np.arange(n_copies + 1)
    weights = binomial_row(n_copies) / 2.0**n_copies
    amplitudes = np.sqrt(weights) * np.exp(1j * k * phase)
    return PureState(BasisLabel.for_copies(n_copies), amplitudes)


def outer_product(a: PureState, b: PureState) -> np.ndarray:
    """|a><b| as a plain complex matrix; bases must match."""
    if a.basis != b.basis:
        raise ValueError("outer product requires matching bases")
    return np.outer(a.amplitudes, b.amplitudes.conj())


def tensor(a, b):
    """Kronecker product of two states or two operators, with composite basis."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(
            BasisLabel.composite(a.basis, b.basis),
            np.kron(a.amplitudes, b.amplitudes),
        )
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        return HermitianOperator(
            BasisLabel.composite(a.basis, b.basis),
            np.kron(a.entries, b.entries),
        )
    raise TypeError("tensor expects two PureStates or two HermitianOperators")


def eigendecompose(h: HermitianOperator) -> SpectralDecomposition:
    """Full spectral decomposition, eigenvalues descending."""
    vals, vecs = np.linalg.eigh(h.entries)
    order = np.argsort(vals)[::-1]
    states = tuple(PureState(h.basis, vecs[:, i]) for i in order)
    return SpectralDecomposition(vals[order], states)


def positive_part_projector(
    h: HermitianOperator, zero_policy: ZeroPolicy = "include_zero"
) -> HermitianOperator:
    """Projector onto the span of eigenvectors with eigenvalue > 0.

    Eigenvalues within EIGENVALUE_ZERO_ATOL of zero are folded into the
    positive part under ``include_zero`` and dropped under ``exclude_zero``.
    """
    if zero_policy not in ("include_zero", "exclude_zero"):
        raise ValueError("unknown zero_policy %r" % (zero_policy,))
    vals, vecs = np.linalg.eigh(h.entries)
    if zero_policy == "include_zero":
        keep = vals > -EIGENVALUE_ZERO_ATOL
    else:
        keep = vals > EIGENVALUE_ZERO_ATOL
    sub = vecs[:, keep]
    proj = sub @ sub.conj().T
    proj = (proj + proj.conj().T) / 2.0
    return HermitianOperator(h.basis, proj)
