"""
Linear algebra over PrimeField or FieldSpec through galois field arrays.

Inputs are lists of rows of raw field integers or arrays of the field's `GF`
class; results come back as plain integer lists so they can be stored in the
frozen models of the analysis and decoding services.
"""

from typing import Iterator, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from common.field import to_list

Matrix = List[List[int]]
MatrixLike = Union[Sequence[Sequence[int]], galois.FieldArray]


def as_matrix(F, rows: MatrixLike, ncols: Optional[int] = None) -> galois.FieldArray:
    """2-D array of F.GF; an empty row list becomes a 0 x ncols array."""
    if isinstance(rows, galois.FieldArray):
        return rows
    rows = [list(r) for r in rows]
    if not rows:
        return F.GF.Zeros((0, ncols or 0))
    return F.array(rows)


def _pivots(reduced: galois.FieldArray) -> List[int]:
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return pivots


def rref(F, rows: MatrixLike, ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form. Returns the nonzero rows and their pivot columns."""
    A = as_matrix(F, rows, ncols)
    if A.shape[0] == 0:
        return [], []
    reduced = A.row_reduce()
    pivots = _pivots(reduced)
    return to_list(reduced[: len(pivots)]), pivots


def rank(F, rows: MatrixLike) -> int:
    A = as_matrix(F, rows)
    if A.size == 0:
        return 0
    return int(np.linalg.matrix_rank(A))


def nullspace(F, rows: MatrixLike, ncols: int) -> Matrix:
    """Basis of {x : A x = 0} in reduced row echelon form."""
    A = as_matrix(F, rows, ncols)
    if A.shape[0] == 0:
        return to_list(F.GF.Identity(ncols))
    kernel = A.null_space()
    if kernel.shape[0] == 0:
        return []
    return to_list(kernel.row_reduce())


def solve(F, A: MatrixLike, b: Sequence[int]) -> Optional[List[int]]:
    """One solution of A x = b (free variables set to zero), or None if inconsistent."""
    b = [int(x) for x in b]
    matrix = as_matrix(F, A)
    if matrix.shape[0] == 0:
        return None if any(b) else []
    ncols = matrix.shape[1]
    augmented = np.hstack([matrix.view(np.ndarray), np.asarray(b, dtype=np.int64)[:, None]])
    reduced = F.array(augmented).row_reduce()
    pivots = _pivots(reduced)
    if ncols in pivots:
        return None
    x = F.GF.Zeros(ncols)
    for i, col in enumerate(pivots):
        x[col] = reduced[i, ncols]
    return to_list(x)


def matmul(F, A: MatrixLike, B: MatrixLike) -> Matrix:
    return to_list(as_matrix(F, A) @ as_matrix(F, B))


def message_blocks(F, k: int, chunk: int = 1 << 16) -> Iterator[galois.FieldArray]:
    """Every nonzero vector of F^k in index order, as arrays of at most `chunk` rows."""
    q = F.order
    total = q**k
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        index = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield F.array((index[:, None] // powers) % q)
