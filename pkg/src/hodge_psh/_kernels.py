"""Hot loops: batched wedge products and Hermitian pairings.

Compiled with numba when available; set HODGE_PSH_NO_NUMBA=1 to force the
pure numpy versions (identical results up to rounding order).
"""

import os

import numpy as np

try:
    if os.environ.get("HODGE_PSH_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by environment")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def wedge_batch_numpy(X, Y, I, J):
    return X[:, I] * Y[:, J] - X[:, J] * Y[:, I]


def pairing_jets_numpy(E0, dE0, EI, dEI, M):
    """Hermitian pairings P(x, y) = x^T M conj(y) needed for the h and h0 jets.

    Returns (h0, h0_s, h0_ssb, F, F_s, F_sb, F_ssb) with F = P(eta0, etainf).
    """
    m0 = np.conj(E0) @ M.T
    md0 = np.conj(dE0) @ M.T
    mi = np.conj(EI) @ M.T
    mdi = np.conj(dEI) @ M.T
    h0 = np.einsum("ki,ki->k", E0, m0)
    h0s = np.einsum("ki,ki->k", dE0, m0)
    h0ss = np.einsum("ki,ki->k", dE0, md0)
    F = np.einsum("ki,ki->k", E0, mi)
    Fs = np.einsum("ki,ki->k", dE0, mi)
    Fsb = np.einsum("ki,ki->k", E0, mdi)
    Fss = np.einsum("ki,ki->k", dE0, mdi)
    return h0, h0s, h0ss, F, Fs, Fsb, Fss


if HAVE_NUMBA:
    @njit(cache=True)
    def wedge_batch_numba(X, Y, I, J):
        n = X.shape[0]
        m = I.shape[0]
        out = np.empty((n, m), dtype=np.complex128)
        for k in range(n):
            for p in range(m):
                i = I[p]
                j = J[p]
                out[k, p] = X[k, i] * Y[k, j] - X[k, j] * Y[k, i]
        return out

    @njit(cache=True)
    def _pair_rows(M, nz_rows, nz_cols, nz_vals, y):
        # returns M conj(y) using the sparse pattern of M
        out = np.zeros(M.shape[0], dtype=np.complex128)
        for t in range(nz_rows.shape[0]):
            out[nz_rows[t]] += nz_vals[t] * np.conj(y[nz_cols[t]])
        return out

    @njit(cache=True)
    def pairing_jets_sparse(E0, dE0, EI, dEI, M, nz_rows, nz_cols, nz_vals):
        n = E0.shape[0]
        d = E0.shape[1]
        res = np.zeros((7, n), dtype=np.complex128)
        for k in range(n):
            m0 = _pair_rows(M, nz_rows, nz_cols, nz_vals, E0[k])
            md0 = _pair_rows(M, nz_rows, nz_cols, nz_vals, dE0[k])
            mi = _pair_rows(M, nz_rows, nz_cols, nz_vals, EI[k])
            mdi = _pair_rows(M, nz_rows, nz_cols, nz_vals, dEI[k])
            a0 = 0j
            a1 = 0j
            a2 = 0j
            a3 = 0j
            a4 = 0j
            a5 = 0j
            a6 = 0j
            for i in range(d):
                a0 += E0[k, i] * m0[i]
                a1 += dE0[k, i] * m0[i]
                a2 += dE0[k, i] * md0[i]
                a3 += E0[k, i] * mi[i]
                a4 += dE0[k, i] * mi[i]
                a5 += E0[k, i] * mdi[i]
                a6 += dE0[k, i] * mdi[i]
            res[0, k] = a0
            res[1, k] = a1
            res[2, k] = a2
            res[3, k] = a3
            res[4, k] = a4
            res[5, k] = a5
            res[6, k] = a6
        return res


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


def wedge_batch(X, Y, I, J):
    X = np.ascontiguousarray(X, dtype=np.complex128)
    Y = np.ascontiguousarray(Y, dtype=np.complex128)
    if HAVE_NUMBA:
        return wedge_batch_numba(X, Y, I, J)
    return wedge_batch_numpy(X, Y, I, J)


def pairing_jets(E0, dE0, EI, dEI, M, use_numba=None):
    use = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    if not use:
        return pairing_jets_numpy(E0, dE0, EI, dEI, M)
    rows, cols = np.nonzero(M)
    vals = np.ascontiguousarray(M[rows, cols])
    args = [np.ascontiguousarray(a, dtype=np.complex128) for a in (E0, dE0, EI, dEI, M)]
    res = pairing_jets_sparse(*args, rows.astype(np.int64), cols.astype(np.int64), vals)
    return tuple(res[i] for i in range(7))
