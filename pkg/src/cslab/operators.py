"""Semisimple operator calculus and the preserver families.

A semisimple operator is stored as eigendata: a spanning frame of
eigenlines together with the tuple of eigenvalues carried along them.
The module builds the three candidate preserver families: conjugations,
transpose conjugations, and the exotic eversion preserver, the latter
with two independent computation routes (eigenframe eversion vs. the
positive-polar/normal factorization) whose agreement is a checkable
property.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import SpectralDomain
from .errors import CsLabError, DimensionMismatchError, NotSemisimpleError, SingularMatrixError
from .frames import evert
from .linalg import (
    DEFAULT_SEMISIMPLE_TOL,
    Frame,
    as_square_matrix,
    commutator_norm,
    eig_decompose,
    polar_decompose,
)

__all__ = [
    "SemisimpleOp",
    "to_matrix",
    "from_matrix",
    "functional_calculus",
    "conjugation_preserver",
    "transpose_conjugation_preserver",
    "exotic_evert",
    "exotic_polar",
    "membership_class",
]


@dataclass(frozen=True, eq=False)
class SemisimpleOp:
    """Eigendata pair: eigenvalue spectrum[i] along frame.lines[i].

    Repeated eigenvalues are allowed.
    """

    frame: Frame
    spectrum: np.ndarray

    def __post_init__(self):
        spec = np.asarray(self.spectrum, dtype=complex).ravel()
        if spec.shape[0] != self.frame.n:
            raise DimensionMismatchError("spectrum length disagrees with the frame")
        if not np.all(np.isfinite(spec)):
            raise CsLabError("non-finite eigenvalue")
        object.__setattr__(self, "spectrum", spec)

    @property
    def n(self) -> int:
        return self.frame.n

    def to_json(self) -> dict:
        from .linalg import frame_to_json

        return {
            "frame": frame_to_json(self.frame),
            "spectrum": [[z.real, z.imag] for z in self.spectrum],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SemisimpleOp":
        from .linalg import frame_from_json

        return cls(
            frame_from_json(obj["frame"]),
            np.asarray([complex(re, im) for re, im in obj["spectrum"]]),
        )


def to_matrix(T: SemisimpleOp) -> np.ndarray:
    """The matrix V diag(spectrum) V^-1 for the frame's column matrix V."""
    V = T.frame.matrix
    X = V * T.spectrum  # scales columns
    return np.linalg.solve(V.T, X.T).T


def from_matrix(M, tol: float = DEFAULT_SEMISIMPLE_TOL) -> SemisimpleOp:
    """Eigendata of a (numerically) semisimple matrix; see eig_decompose."""
    frame, spec = eig_decompose(M, tol=tol)
    return SemisimpleOp(frame, spec)


def functional_calculus(T: SemisimpleOp, f) -> SemisimpleOp:
    """Apply a scalar function eigenvalue-wise: same frame, mapped spectrum."""
    try:
        vals = np.asarray([complex(f(z)) for z in T.spectrum])
    except Exception as exc:
        raise CsLabError(f"function undefined on the spectrum: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise CsLabError("function produced a non-finite value on the spectrum")
    return SemisimpleOp(T.frame, vals)


def _checked_inverse(T) -> tuple:
    T = as_square_matrix(T)
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularMatrixError("conjugating matrix is numerically singular")
    return T, np.linalg.inv(T)


def conjugation_preserver(T):
    """The map S -> T S T^-1 for invertible T (a stateless closure)."""
    T, Tinv = _checked_inverse(T)

    def ad(S):
        return T @ as_square_matrix(S) @ Tinv

    return ad


def transpose_conjugation_preserver(T):
    """The map S -> T S^t T^-1, transpose taken in the standard basis."""
    T, Tinv = _checked_inverse(T)

    def ad_t(S):
        return T @ as_square_matrix(S).T @ Tinv

    return ad_t


def exotic_evert(T: SemisimpleOp) -> SemisimpleOp:
    """Eversion route of the exotic preserver: evert the eigenframe,
    keep the spectrum.  Involutive; fixes operators with orthogonal
    eigenframes (the normal ones)."""
    return SemisimpleOp(evert(T.frame), T.spectrum)


def exotic_polar(M, tol: float = DEFAULT_SEMISIMPLE_TOL) -> np.ndarray:
    """Polar route of the exotic preserver.

    Writes the eigenvector matrix V = S U (S positive definite, U
    unitary), forms the normal part N = U diag(spectrum) U*, and returns
    S^-1 N S.  Must agree with the eversion route wherever both are
    defined.
    """
    frame, spec = eig_decompose(M, tol=tol)
    V = frame.matrix
    S, U = polar_decompose(V)
    N = (U * spec) @ U.conj().T
    return np.linalg.solve(S, N @ S)


def membership_class(M, X: SpectralDomain, tol: float = 1e-6) -> str:
    """Classify M against the operator classes over X.

    Returns "outside" when some eigenvalue is farther than tol from X,
    otherwise the strongest of "normal", "semisimple", "general".
    """
    M = as_square_matrix(M)
    lam = np.linalg.eigvals(M)
    if any(X.distance(z) > tol for z in lam):
        return "outside"
    scale = max(np.linalg.norm(M), 1.0)
    if commutator_norm(M.conj().T, M) <= 1e-10 * scale**2:
        return "normal"
    try:
        eig_decompose(M)
    except NotSemisimpleError:
        return "general"
    return "semisimple"
