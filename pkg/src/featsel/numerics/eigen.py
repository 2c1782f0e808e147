"""Dense symmetric eigensolvers: power iteration and cyclic Jacobi.

Matrices in this package are small (a few thousand rows at most), so a
deterministic dense solver beats an iterative sparse one; determinism is
what makes rankings byte-reproducible.
"""

import numpy as np

from ..core import DataError, NumericalError, UsageError

_JACOBI_TOL = 1e-10
_JACOBI_MAX_SWEEPS = 100


def orient_sign(v, tol=0.0):
    """Flip v so its first component larger than tol in magnitude is positive."""
    for val in v:
        if abs(val) > tol:
            return v if val > 0 else -v
    return v


def power_iteration(a, tol=1e-12, max_iter=1000):
    """Principal eigenpair of a nonnegative symmetric matrix.

    Starts from the uniform positive vector (which overlaps the Perron
    eigenvector), iterates until the successive unit iterates change by
    less than ``tol`` or ``max_iter`` is hit, and returns the eigenvector
    with nonnegative orientation plus its Rayleigh quotient.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DataError("power_iteration needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise DataError("power_iteration needs a finite matrix")
    n = a.shape[0]
    if not np.any(a):
        raise NumericalError("power_iteration on the zero matrix")
    x = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        y = a @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            # Possible only when x is exactly orthogonal to the range of a.
            raise NumericalError("power_iteration hit the null space")
        y /= norm
        if np.abs(y - x).max() < tol:
            x = y
            break
        x = y
    x = orient_sign(x)
    eigval = float(x @ (a @ x))
    return x, eigval


def jacobi_eigh(a, tol=_JACOBI_TOL, max_sweeps=_JACOBI_MAX_SWEEPS):
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Returns (eigenvalues, eigenvectors-as-columns) sorted by ascending
    eigenvalue (stable, so degenerate pairs keep the sweep order), each
    column oriented so its first nonzero entry is positive.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise DataError("jacobi_eigh needs a square matrix")
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        # Sum the off-diagonal squares directly; subtracting the diagonal
        # mass from the Frobenius norm cancels catastrophically once the
        # off-diagonal part drops below sqrt(eps)*scale.
        off = np.sqrt(2.0 * np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NumericalError("jacobi_eigh did not converge in %d sweeps" % max_sweeps)
    eigvals = np.diag(a).copy()
    order = np.argsort(eigvals, kind="stable")
    eigvals = eigvals[order]
    vecs = v[:, order]
    for k in range(n):
        vecs[:, k] = orient_sign(vecs[:, k], tol=1e-12)
    return eigvals, vecs


def smallest_generalized_eigvecs(laplacian, d_diag, k):
    """K smallest non-trivial eigenvectors of the pair (L, D).

    Solves D^(-1/2) L D^(-1/2) w = lambda w with the Jacobi solver after
    shifting the known trivial mode (D^(1/2)*1, eigenvalue 0 of any graph
    Laplacian) to the top of the spectrum, then back-transforms the K
    smallest remaining eigenvectors by D^(-1/2).  Returns an n x K matrix.
    """
    lap = np.asarray(laplacian, dtype=np.float64)
    d = np.asarray(d_diag, dtype=np.float64)
    n = lap.shape[0]
    if k >= n:
        raise UsageError("k must be < matrix size %d, got %d" % (n, k))
    if np.any(d <= 0):
        raise DataError("D must have strictly positive diagonal entries")
    d_isqrt = 1.0 / np.sqrt(d)
    m = lap * d_isqrt[:, None] * d_isqrt[None, :]
    m = 0.5 * (m + m.T)
    w0 = np.sqrt(d)
    w0 /= np.linalg.norm(w0)
    shift = float(np.linalg.norm(m)) + 1.0
    m_shifted = m + shift * np.outer(w0, w0)
    eigvals, vecs = jacobi_eigh(m_shifted)
    out = vecs[:, :k] * d_isqrt[:, None]
    for j in range(k):
        out[:, j] = orient_sign(out[:, j], tol=1e-12)
    return out
