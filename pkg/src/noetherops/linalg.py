"""Kernels and echelon forms over exact fields and in floating point.

Matrices carry row and column labels so that kernel vectors can be read back
as operators (columns are derivative monomials).  Exact kernels come from
Gauss-Jordan elimination over any exact :class:`~noetherops.scalars.FieldContext`;
numerical kernels come from the SVD.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .errors import DegenerateBasis, NumericalFailure
from .polyring import GRLEX
from .scalars import DEFAULT_TOLERANCE, ApproxComplexField


class LabeledMatrix:
    """Dense matrix with row labels and column labels.

    Parameters
    ----------
    rows : list of lists
        Row-major entries, elements of ``ctx``.
    row_labels, col_labels : sequences
        One label per row and per column.
    ctx : FieldContext
    """

    def __init__(self, rows, row_labels, col_labels, ctx):
        self.rows = [list(r) for r in rows]
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.ctx = ctx
        if len(self.rows) != len(self.row_labels):
            raise ValueError("row label count does not match the row count")
        for r in self.rows:
            if len(r) != len(self.col_labels):
                raise ValueError("column label count does not match the row length")
        self._col_index = {c: j for j, c in enumerate(self.col_labels)}

    @property
    def shape(self):
        return len(self.rows), len(self.col_labels)

    def entry(self, row_label, col_label):
        i = self.row_labels.index(row_label)
        return self.rows[i][self._col_index[col_label]]

    def column_index(self, label):
        return self._col_index[label]

    def to_numpy(self) -> np.ndarray:
        m, n = self.shape
        out = np.zeros((m, n), dtype=complex)
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                out[i, j] = complex(v)
        return out

    def to_csv(self, render_label=str) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [render_label(c) for c in self.col_labels])
        for label, row in zip(self.row_labels, self.rows):
            w.writerow([str(label)] + [self.ctx.render(v) for v in row])
        return buf.getvalue()

    def __repr__(self):
        m, n = self.shape
        return f"LabeledMatrix({m}x{n} over {self.ctx!r})"


class KernelBasis:
    """Kernel vectors indexed by the column labels of a matrix."""

    def __init__(self, vectors, labels, ctx, echelon=False):
        self.vectors = [list(v) for v in vectors]
        self.labels = list(labels)
        self.ctx = ctx
        self.echelon = echelon

    def __len__(self):
        return len(self.vectors)

    @property
    def dimension(self):
        return len(self.vectors)

    def pivots(self, order=GRLEX):
        """Label of the largest nonzero entry of each vector."""
        out = []
        for v in self.vectors:
            nz = [self.labels[j] for j, x in enumerate(v) if not self.ctx.is_zero(x)]
            out.append(max(nz, key=order.key) if nz else None)
        return out

    def __repr__(self):
        return f"KernelBasis(dim={len(self.vectors)}, echelon={self.echelon})"


def exact_kernel(M: LabeledMatrix) -> KernelBasis:
    """Right null space by Gauss-Jordan elimination over an exact field.

    Rows are kept sparse.  At each column the pivot row is the one with the
    fewest nonzero entries, ties going to the earliest row; this limits fill-in
    but does not change the resulting kernel.
    """
    ctx = M.ctx
    m, n = M.shape
    is_zero = ctx.is_zero
    rows = []
    for r in M.rows:
        d = {j: v for j, v in enumerate(r) if not is_zero(v)}
        if d:
            rows.append(d)
    pivot_rows = {}  # column -> reduced row (pivot normalized to one)
    active = rows
    for col in range(n):
        candidates = [r for r in active if col in r]
        if not candidates:
            continue
        piv = min(candidates, key=len)
        active = [r for r in active if r is not piv]
        inv = ctx.inv(piv[col])
        piv = {j: (v if j == col else v * inv) for j, v in piv.items()}
        piv[col] = ctx.one()
        new_active = []
        for r in active:
            if col in r:
                r = _eliminate(r, piv, col, is_zero)
                if r:
                    new_active.append(r)
            else:
                new_active.append(r)
        active = new_active
        pivot_rows[col] = piv
    # back substitution, latest pivot first
    cols = sorted(pivot_rows)
    for k in range(len(cols) - 1, -1, -1):
        col = cols[k]
        piv = pivot_rows[col]
        for other in cols[:k]:
            r = pivot_rows[other]
            if col in r:
                pivot_rows[other] = _eliminate(r, piv, col, is_zero)
    rank = len(pivot_rows)
    free = [j for j in range(n) if j not in pivot_rows]
    vectors = []
    for f in free:
        v = [ctx.zero()] * n
        v[f] = ctx.one()
        for col, r in pivot_rows.items():
            if f in r:
                v[col] = -r[f]
        vectors.append(v)
    assert rank + len(vectors) == n
    return KernelBasis(vectors, M.col_labels, ctx)


def _eliminate(row, piv, col, is_zero):
    factor = row[col]
    out = dict(row)
    del out[col]
    for j, v in piv.items():
        if j == col:
            continue
        if j in out:
            s = out[j] - factor * v
            if is_zero(s):
                del out[j]
            else:
                out[j] = s
        else:
            out[j] = -(factor * v)
    return out


def numeric_kernel(M, tol: float = DEFAULT_TOLERANCE, labels=None, row_scales=None) -> KernelBasis:
    """Numerical right null space from the SVD.

    Each nonzero row is divided by its entry in ``row_scales`` (default: its
    own Euclidean norm).  Right singular vectors whose singular value is at
    most ``tol * sigma_max`` span the kernel; an all-zero matrix uses
    ``sigma_max = 1``.
    """
    if isinstance(M, LabeledMatrix):
        A = M.to_numpy()
        labels = M.col_labels
    else:
        A = np.asarray(M, dtype=complex)
        labels = list(range(A.shape[1])) if labels is None else list(labels)
    m, n = A.shape
    if not np.all(np.isfinite(A)):
        raise NumericalFailure("matrix has non-finite entries")
    norms = np.linalg.norm(A, axis=1) if m else np.zeros(0)
    if row_scales is not None:
        row_scales = np.asarray(row_scales, dtype=float)
        if row_scales.shape != (m,) or not np.all(np.isfinite(row_scales)):
            raise NumericalFailure("row scales must be finite, one per row")
        norms = np.where(norms > 0, row_scales, 0.0)
    keep = norms > 0
    B = A[keep] / norms[keep, None] if np.any(keep) else np.zeros((0, n), dtype=complex)
    ctx = ApproxComplexField(tol)
    if B.shape[0] == 0:
        return KernelBasis([list(row) for row in np.eye(n, dtype=complex)], labels, ctx)
    try:
        _, s, vh = np.linalg.svd(B, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from None
    smax = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > tol * smax))
    null = vh[rank:].conj()
    scale = np.linalg.norm(B, 2) if B.size else 1.0
    for v in null:
        if np.linalg.norm(B @ v) > 10 * tol * max(scale, 1.0):
            raise NumericalFailure("kernel vector residual exceeds tolerance")
    return KernelBasis([list(v) for v in null], labels, ctx)


def reduced_column_echelon(K: KernelBasis, order=GRLEX, tol: float | None = None) -> KernelBasis:
    """Canonical basis of the span of ``K``.

    Each vector gets a pivot at its largest label under ``order`` with pivot
    value one, and every other vector vanishes at that position.  Vectors are
    returned by ascending pivot.  In floating point, entries below
    ``tol * max|entry|`` are set to zero before and after elimination.
    """
    ctx = K.ctx
    if not K.vectors:
        raise DegenerateBasis("empty kernel basis")
    n = len(K.labels)
    priority = sorted(range(n), key=lambda j: order.key(K.labels[j]), reverse=True)
    if not ctx.exact:
        return _numeric_echelon(K, priority, order, tol if tol is not None else ctx.tol)
    rows = [list(v) for v in K.vectors]
    used = []
    pivots = []
    for j in priority:
        r = next((i for i in range(len(rows)) if i not in used and not ctx.is_zero(rows[i][j])), None)
        if r is None:
            continue
        inv = ctx.inv(rows[r][j])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not ctx.is_zero(rows[i][j]):
                f = rows[i][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        used.append(r)
        pivots.append(j)
        if len(used) == len(rows):
            break
    if len(used) < len(rows):
        raise DegenerateBasis("kernel vectors are linearly dependent")
    ordered = sorted(zip(pivots, used), key=lambda pu: order.key(K.labels[pu[0]]))
    return KernelBasis([rows[u] for _, u in ordered], K.labels, ctx, echelon=True)


def _numeric_echelon(K, priority, order, tol):
    A = np.array(K.vectors, dtype=complex)
    big = np.max(np.abs(A)) if A.size else 0.0
    if big == 0:
        raise DegenerateBasis("kernel basis is zero")
    A[np.abs(A) < tol * big] = 0
    k = A.shape[0]
    used = []
    pivots = []
    for j in priority:
        free = [i for i in range(k) if i not in used]
        if not free:
            break
        mags = np.abs(A[free, j])
        top = float(np.max(mags))
        if top <= tol * big:
            A[free, j] = 0
            continue
        r = free[int(np.argmax(mags))]
        A[r] = A[r] / A[r, j]
        A[r, j] = 1  # complex z / z need not round to exactly one
        for i in range(k):
            if i != r and A[i, j] != 0:
                A[i] = A[i] - A[i, j] * A[r]
        A[:, j][np.arange(k) != r] = 0
        used.append(r)
        pivots.append(j)
        scale = max(np.max(np.abs(A)), 1.0)
        A[np.abs(A) < tol * scale] = 0
    if len(used) < k:
        raise DegenerateBasis("numerically dependent kernel vectors")
    ordered = sorted(zip(pivots, used), key=lambda pu: order.key(K.labels[pu[0]]))
    return KernelBasis([list(A[u]) for _, u in ordered], K.labels, K.ctx, echelon=True)
