"""Geometry of line tuples.

The eversion map (each line replaced by the orthocomplement of the span
of the others), linear images of frames, the right S_n-action on
indexed line tuples, and the block-span linking relation used to compare
frames partition-wise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import CsLabError, DegenerateFrameError, DimensionMismatchError, SingularMatrixError
from .linalg import Frame, Line, as_square_matrix

__all__ = [
    "Permutation",
    "Partition",
    "evert",
    "apply_linear",
    "act_permutation",
    "pi_linked",
]

EVERT_TOL = 1e-10


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0..n-1}, stored as the tuple of images.

    Convention: acting on a frame on the right reindexes by
    ``(F <| p)_i = F_{p.images[i]}``, and ``compose(a, b)`` is the unique
    permutation with ``(F <| a) <| b == F <| compose(a, b)`` (that is,
    plain function composition ``a o b``).
    """

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise CsLabError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n: int, indices) -> "Permutation":
        """Cycle sending indices[0] -> indices[1] -> ... -> indices[0]."""
        images = list(range(n))
        idx = list(indices)
        for a, b in zip(idx, idx[1:] + idx[:1]):
            images[a] = b
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int):
        for images in itertools.permutations(range(n)):
            yield cls(images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.n))

    def apply_to(self, seq):
        """Right action on an indexed tuple: result_i = seq[images[i]]."""
        return tuple(seq[j] for j in self.images)

    def to_json(self) -> dict:
        return {"images": [i + 1 for i in self.images]}

    @classmethod
    def from_json(cls, obj: dict) -> "Permutation":
        return cls(tuple(int(i) - 1 for i in obj["images"]))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Function composition a o b; satisfies (F <| a) <| b = F <| compose(a, b)."""
    if a.n != b.n:
        raise DimensionMismatchError("permutation sizes differ")
    return Permutation(tuple(a.images[b.images[i]] for i in range(a.n)))


@dataclass(frozen=True)
class Partition:
    """A partition of {0..n-1} into disjoint nonempty blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in blk)) for blk in self.blocks)
        flat = sorted(i for blk in blocks for i in blk)
        n = len(flat)
        if not blocks or any(not blk for blk in blocks) or flat != list(range(n)):
            raise CsLabError(f"blocks do not partition 0..{n - 1}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(blk) for blk in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    def to_json(self) -> dict:
        return {"blocks": [[i + 1 for i in blk] for blk in self.blocks]}

    @classmethod
    def from_json(cls, obj: dict) -> "Partition":
        return cls(tuple(tuple(int(i) - 1 for i in blk) for blk in obj["blocks"]))


def evert(F: Frame, tol: float = EVERT_TOL) -> Frame:
    """The everted frame: line i becomes the orthocomplement of the span
    of the other lines.

    Computed as the columns of the conjugate-transposed inverse of the
    frame's column matrix (the dual basis up to conjugation), which is
    manifestly independent of per-line scaling.  An involution; fixes
    exactly the orthogonal frames.
    """
    V = F.matrix
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[-1] <= tol * sv[0]:
        raise DegenerateFrameError(
            f"frame too close to degenerate (condition number {sv[0] / sv[-1]:.3e})"
        )
    W = np.linalg.inv(V).conj().T
    return Frame.from_matrix(W)


def apply_linear(T, F: Frame, conjugate: bool = False) -> Frame:
    """Image frame under an invertible T: line i spans T d_i, with the
    direction entrywise conjugated first when ``conjugate`` is set
    (conjugate-linear action)."""
    T = as_square_matrix(T)
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularMatrixError("linear map is numerically singular")
    V = F.matrix
    if conjugate:
        V = V.conj()
    return Frame.from_matrix(T @ V)


def act_permutation(F: Frame, theta: Permutation) -> Frame:
    """Right action reindexing: (F <| theta)_i = F_{theta(i)}."""
    if F.n != theta.n:
        raise DimensionMismatchError("frame and permutation sizes differ")
    return Frame(theta.apply_to(F.lines))


def pi_linked(F: Frame, G: Frame, pi: Partition, tol: float = 1e-8) -> bool:
    """True iff for every block of the partition the spans of the two
    frames' block lines agree (largest principal angle <= tol)."""
    if F.n != G.n or pi.n != F.n:
        raise DimensionMismatchError("frame/partition sizes differ")
    VF, VG = F.matrix, G.matrix
    for blk in pi.blocks:
        idx = list(blk)
        angles = scipy.linalg.subspace_angles(VF[:, idx], VG[:, idx])
        if angles.size and angles.max() > tol:
            return False
    return True
