"""Dense complex linear-algebra kernel.

Lines and frames in C^n, eigendecomposition with a semisimplicity gate,
polar decomposition of invertible matrices, and the metrics the rest of
the package uses to state its numerical claims.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    CsLabError,
    DegenerateFrameError,
    DimensionMismatchError,
    NotSemisimpleError,
    SingularMatrixError,
)

DEFAULT_SEMISIMPLE_TOL = 1e-9
FRAME_INDEPENDENCE_TOL = 1e-10
ORTHO_TOL = 1e-10

__all__ = [
    "Line",
    "Frame",
    "OrthoFrame",
    "as_square_matrix",
    "canonical_direction",
    "line_distance",
    "frame_distance",
    "commutator_norm",
    "eig_decompose",
    "polar_decompose",
    "matrix_to_json",
    "matrix_from_json",
]


def as_square_matrix(M) -> np.ndarray:
    """Validate and return a finite square complex matrix of size >= 2."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise CsLabError("matrix has non-finite entries")
    return A


def canonical_direction(v) -> np.ndarray:
    """Unit vector spanning the same line, with its first nonzero
    coordinate made real positive (fixes the phase ambiguity)."""
    d = np.asarray(v, dtype=complex).ravel()
    if not np.all(np.isfinite(d)):
        raise CsLabError("direction has non-finite entries")
    nrm = np.linalg.norm(d)
    if nrm == 0.0:
        raise CsLabError("zero vector spans no line")
    d = d / nrm
    # first coordinate that is not negligible relative to the unit norm
    k = int(np.argmax(np.abs(d) > 1e-12))
    phase = d[k] / abs(d[k])
    return d / phase


@dataclass(frozen=True, eq=False)
class Line:
    """A one-dimensional subspace of C^n, stored as a canonical unit vector."""

    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "direction", canonical_direction(self.direction))

    @property
    def n(self) -> int:
        return self.direction.shape[0]

    @classmethod
    def span(cls, v) -> "Line":
        return cls(np.asarray(v, dtype=complex))


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered n-tuple of lines spanning C^n.

    Order matters: two frames with the same lines in different order are
    different frames.
    """

    lines: tuple

    independence_tol = FRAME_INDEPENDENCE_TOL

    def __post_init__(self):
        lines = tuple(self.lines)
        if not lines:
            raise CsLabError("empty frame")
        n = lines[0].n
        if len(lines) != n or any(l.n != n for l in lines):
            raise DimensionMismatchError("a frame needs exactly n lines in C^n")
        object.__setattr__(self, "lines", lines)
        sv = np.linalg.svd(self.matrix, compute_uv=False)
        if sv[-1] <= self.independence_tol:
            raise DegenerateFrameError(
                f"lines are numerically dependent (smallest singular value {sv[-1]:.3e})"
            )
        self._check_extra()

    def _check_extra(self):
        pass

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def matrix(self) -> np.ndarray:
        """Column matrix of the line directions."""
        return np.column_stack([l.direction for l in self.lines])

    @classmethod
    def from_matrix(cls, V) -> "Frame":
        V = np.asarray(V, dtype=complex)
        if V.ndim != 2 or V.shape[0] != V.shape[1]:
            raise DimensionMismatchError("frame matrix must be square")
        return cls(tuple(Line(V[:, i]) for i in range(V.shape[1])))

    def is_orthogonal(self, tol: float = ORTHO_TOL) -> bool:
        G = self.matrix.conj().T @ self.matrix
        off = G - np.diag(np.diag(G))
        return bool(np.max(np.abs(off)) <= tol)


class OrthoFrame(Frame):
    """A frame whose lines are pairwise orthogonal."""

    def _check_extra(self):
        if not self.is_orthogonal():
            raise CsLabError("lines are not pairwise orthogonal")


def line_distance(a: Line, b: Line) -> float:
    """sin of the principal angle between two lines; in [0, 1].

    Phase-invariant, symmetric, zero exactly on equal lines.
    """
    if a.n != b.n:
        raise DimensionMismatchError("lines live in different dimensions")
    # sqrt(1 - |<a,b>|^2) evaluated as the norm of the orthogonal
    # rejection, which keeps full precision for nearly equal lines
    da, db = a.direction, b.direction
    rej = da - np.vdot(db, da) * db
    return float(min(1.0, np.linalg.norm(rej)))


def frame_distance(F: Frame, G: Frame) -> float:
    """Max over i of line_distance(F_i, G_i); ordered, no matching search."""
    if F.n != G.n:
        raise DimensionMismatchError("frames have different sizes")
    return max(line_distance(a, b) for a, b in zip(F.lines, G.lines))


def commutator_norm(A, B) -> float:
    """Frobenius norm of AB - BA."""
    A = as_square_matrix(A)
    B = as_square_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatchError("matrices have different sizes")
    return float(np.linalg.norm(A @ B - B @ A))


def _eig_sort_order(lam: np.ndarray, dirs: list) -> list:
    """(Re, Im)-lexicographic eigenvalue order, ties broken by the
    canonical eigenvector entries."""

    def key(i):
        d = dirs[i]
        return (lam[i].real, lam[i].imag) + tuple(
            x for z in d for x in (z.real, z.imag)
        )

    return sorted(range(len(lam)), key=key)


def eig_decompose(M, tol: float = DEFAULT_SEMISIMPLE_TOL):
    """Eigendecomposition gated on numerical semisimplicity.

    Returns (frame, spectrum) with M = V diag(spectrum) V^-1 for the
    frame's column matrix V, eigenvalues in (Re, Im)-lexicographic order.

    Raises NotSemisimpleError when the eigenvector matrix is too badly
    conditioned (condition number above 1/tol) or the reconstruction
    residual exceeds tol * ||M||_F: defective or numerically defective
    input.
    """
    M = as_square_matrix(M)
    lam, V = np.linalg.eig(M)
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[-1] <= 0 or sv[0] / sv[-1] > 1.0 / tol:
        raise NotSemisimpleError(
            "no well-conditioned eigenbasis: condition number "
            f"{sv[0] / max(sv[-1], np.finfo(float).tiny):.3e} exceeds {1.0 / tol:.3e}"
        )
    R = (V * lam) @ np.linalg.inv(V)
    resid = np.linalg.norm(M - R)
    if resid > tol * max(np.linalg.norm(M), np.finfo(float).tiny):
        raise NotSemisimpleError(
            f"eigenbasis reconstruction residual {resid:.3e} exceeds the gate"
        )
    dirs = [canonical_direction(V[:, i]) for i in range(len(lam))]
    order = _eig_sort_order(lam, dirs)
    frame = Frame(tuple(Line(dirs[i]) for i in order))
    return frame, lam[order].copy()


def polar_decompose(M):
    """Left polar decomposition M = S U of an invertible matrix.

    S is Hermitian positive definite, U unitary.  Raises
    SingularMatrixError for numerically singular input.
    """
    M = as_square_matrix(M)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularMatrixError(
            f"matrix numerically singular (smallest singular value {sv[-1]:.3e})"
        )
    U, S = scipy.linalg.polar(M, side="left")
    return S, U


# ---------------------------------------------------------------------------
# JSON wire formats


def _c2pair(z: complex):
    return [float(z.real), float(z.imag)]


def matrix_to_json(M) -> dict:
    """{"n": int, "re": [[float]], "im": [[float]]}"""
    M = as_square_matrix(M)
    return {
        "n": int(M.shape[0]),
        "re": [[float(x) for x in row] for row in M.real],
        "im": [[float(x) for x in row] for row in M.imag],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    n = int(obj["n"])
    M = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if M.shape != (n, n):
        raise DimensionMismatchError("matrix JSON shape disagrees with its 'n'")
    return as_square_matrix(M)


def frame_to_json(F: Frame) -> dict:
    """{"n": int, "lines": [[[re, im], ...], ...]}"""
    return {
        "n": F.n,
        "lines": [[_c2pair(z) for z in l.direction] for l in F.lines],
    }


def frame_from_json(obj: dict) -> Frame:
    lines = tuple(
        Line(np.asarray([complex(re, im) for re, im in vec])) for vec in obj["lines"]
    )
    F = Frame(lines)
    if F.n != int(obj["n"]):
        raise DimensionMismatchError("frame JSON size disagrees with its 'n'")
    return F
