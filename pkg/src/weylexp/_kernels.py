"""Hot loops of the numerical oracle.

Each kernel exists twice: a numba ``@njit`` version and a pure numpy one.
``WEYLEXP_BACKEND=numpy`` (or a missing numba) selects the numpy path;
``WEYLEXP_BACKEND=numba`` is the default.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAS_NUMBA = False


def backend() -> str:
    want = os.environ.get("WEYLEXP_BACKEND", "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"WEYLEXP_BACKEND must be 'numba' or 'numpy', not {want!r}")
    if want == "numba" and not HAS_NUMBA:
        return "numpy"
    return want


# -- tensor-product quadrature of exp(-<b+1,y>) / sum_p exp(-<a_p,y>) r^s_p ---

def _quad_numpy(A, logw, b1, nodes, h):
    N = A.shape[1]
    y = (np.arange(nodes) + 0.5) * h
    # log-weights over the trailing axes, shape (nodes,)*(N-1) + (P,)
    rest_t = logw.copy()
    rest_num = np.zeros(())
    for i in range(1, N):
        rest_t = rest_t[..., None, :] - np.outer(y, A[:, i])
        rest_num = rest_num[..., None] - y * b1[i]
    total = 0.0
    for k in range(nodes):
        t = rest_t - y[k] * A[:, 0]
        mx = t.max(axis=-1)
        lse = mx + np.log(np.exp(t - mx[..., None]).sum(axis=-1))
        total += np.exp(rest_num - y[k] * b1[0] - lse).sum()
    return total * h ** N


def _quad_numba_impl(A, logw, b1, nodes, h):
    N = A.shape[1]
    P = A.shape[0]
    y = np.empty(nodes)
    for k in range(nodes):
        y[k] = (k + 0.5) * h
    n2 = nodes if N >= 2 else 1
    n3 = nodes if N == 3 else 1
    t = np.empty(P)
    total = 0.0
    for i in range(nodes):
        for j in range(n2):
            for k in range(n3):
                num = -b1[0] * y[i]
                if N >= 2:
                    num -= b1[1] * y[j]
                if N == 3:
                    num -= b1[2] * y[k]
                mx = -np.inf
                for p in range(P):
                    v = logw[p] - A[p, 0] * y[i]
                    if N >= 2:
                        v -= A[p, 1] * y[j]
                    if N == 3:
                        v -= A[p, 2] * y[k]
                    t[p] = v
                    if v > mx:
                        mx = v
                acc = 0.0
                for p in range(P):
                    acc += np.exp(t[p] - mx)
                total += np.exp(num - mx - np.log(acc))
    return total * h ** N


# -- Monte Carlo values of 1 / Lambda(x, r) -----------------------------------

def _inv_lambda_numpy(X, owner, coeff, exps, rpow, nlam):
    # monomial values, shape (samples, terms)
    mono = np.prod(X[:, None, :] ** exps[None, :, :], axis=2) * coeff[None, :]
    vals = np.zeros((X.shape[0], nlam))
    np.add.at(vals.T, owner, mono.T)
    return 1.0 / (np.abs(vals) @ rpow)


def _inv_lambda_numba_impl(X, owner, coeff, exps, rpow, nlam):
    S, v = X.shape
    T = coeff.shape[0]
    out = np.empty(S)
    vals = np.empty(nlam)
    for s in range(S):
        for q in range(nlam):
            vals[q] = 0.0
        for t in range(T):
            m = coeff[t]
            for i in range(v):
                e = exps[t, i]
                if e:
                    m *= X[s, i] ** e
            vals[owner[t]] += m
        lam = 0.0
        for q in range(nlam):
            lam += abs(vals[q]) * rpow[q]
        out[s] = 1.0 / lam
    return out


if HAS_NUMBA:
    _quad_numba = numba.njit(cache=False)(_quad_numba_impl)
    _inv_lambda_numba = numba.njit(cache=False)(_inv_lambda_numba_impl)
else:  # pragma: no cover
    _quad_numba = _quad_numba_impl
    _inv_lambda_numba = _inv_lambda_numba_impl


def quad_sum(A, logw, b1, nodes, h, which: str | None = None) -> float:
    which = which or backend()
    A = np.ascontiguousarray(A, dtype=np.float64)
    logw = np.ascontiguousarray(logw, dtype=np.float64)
    b1 = np.ascontiguousarray(b1, dtype=np.float64)
    if which == "numba":
        return float(_quad_numba(A, logw, b1, int(nodes), float(h)))
    return float(_quad_numpy(A, logw, b1, int(nodes), float(h)))


def inv_lambda(X, owner, coeff, exps, rpow, nlam, which: str | None = None):
    which = which or backend()
    args = (np.ascontiguousarray(X, dtype=np.float64), np.ascontiguousarray(owner, dtype=np.int64),
            np.ascontiguousarray(coeff, dtype=np.float64), np.ascontiguousarray(exps, dtype=np.int64),
            np.ascontiguousarray(rpow, dtype=np.float64), int(nlam))
    if which == "numba":
        return _inv_lambda_numba(*args)
    return _inv_lambda_numpy(*args)
