"""Compiled inner loop of the census.

Everything here works on field-element codes with lookup tables, so the same
code serves prime fields and extension fields.  Integer constants ``k <= n+1``
encode as themselves because the census requires ``p > n + 1``.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _fpow(a, e, MUL):
    r = 1
    while e > 0:
        if e & 1:
            r = MUL[r, a]
        a = MUL[a, a]
        e >>= 1
    return r


@njit(cache=True)
def _mod_inplace(a, da, b, db, SUB, MUL, INV):
    """a <- a mod b; returns the degree of the remainder (-1 for zero)."""
    inv = INV[b[db]]
    for k in range(da, db - 1, -1):
        c = a[k]
        if c != 0:
            c = MUL[c, inv]
            off = k - db
            for j in range(db + 1):
                a[off + j] = SUB[a[off + j], MUL[c, b[j]]]
    d = da if da < db else db - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


@njit(cache=True)
def _resultant(a, da, b, db, SUB, MUL, INV):
    """lc(b)^deg(a) * prod_{b(beta)=0} a(beta); clobbers a and b."""
    acc = 1
    while True:
        if db == 0:
            return MUL[acc, _fpow(b[0], da, MUL)]
        dr = _mod_inplace(a, da, b, db, SUB, MUL, INV)
        if dr < 0:
            return 0
        acc = MUL[acc, _fpow(b[db], da - dr, MUL)]
        if (dr * db) & 1:
            acc = SUB[0, acc]
        a, b = b, a
        da, db = db, dr


@njit(cache=True)
def _gcd_degree(a, da, b, db, SUB, MUL, INV):
    while db >= 0:
        dr = _mod_inplace(a, da, b, db, SUB, MUL, INV)
        a, b = b, a
        da, db = db, dr
    return da


@njit(cache=True)
def ram_length_codes(coef, n, ADD, SUB, MUL, INV, VINV, work):
    """Total ramification length of f = x^{n+1} + ... + coef[1] x (coef[0] = 0).

    ``work`` is a (6, n + 2) int64 scratch array.
    """
    fa = work[0]
    fb = work[1]
    dv = work[2]
    vals = work[3]
    bp = work[4]
    bpp = work[5]
    for t in range(n + 1):
        for i in range(n + 2):
            fa[i] = coef[i]
        fa[0] = SUB[coef[0], t]
        for i in range(n + 1):
            fb[i] = MUL[i + 1, coef[i + 1]]
        fb[n + 1] = 0
        vals[t] = _resultant(fa, n + 1, fb, n, SUB, MUL, INV)
    # interpolate the branch polynomial B_f from its values at 0..n
    for i in range(n + 1):
        s = 0
        for j in range(n + 1):
            s = ADD[s, MUL[VINV[i, j], vals[j]]]
        bp[i] = s
    if bp[n] == 0:
        return -1
    for i in range(n):
        dv[i] = MUL[i + 1, bp[i + 1]]
    for i in range(n + 1):
        bpp[i] = bp[i]
    # length = n - deg(B / gcd(B, B')) = deg gcd(B, B')
    return _gcd_degree(bpp, n, dv, n - 1, SUB, MUL, INV)


@njit(cache=True)
def census_shard(prefix, n, q, ADD, SUB, MUL, INV, VINV):
    """Histogram of lengths over all f whose top coefficients equal ``prefix``.

    ``prefix[0]`` is the coefficient of x^n, ``prefix[1]`` of x^{n-1}, ...
    """
    k = prefix.shape[0]
    free = n - k
    hist = np.zeros(n + 2, dtype=np.int64)
    coef = np.zeros(n + 2, dtype=np.int64)
    work = np.zeros((6, n + 2), dtype=np.int64)
    coef[n + 1] = 1
    for i in range(k):
        coef[n - i] = prefix[i]
    while True:
        ell = ram_length_codes(coef, n, ADD, SUB, MUL, INV, VINV, work)
        if ell < 0:
            hist[n + 1] += 1
        else:
            hist[ell] += 1
        # odometer over coef[1..free]
        j = 1
        while j <= free:
            coef[j] += 1
            if coef[j] < q:
                break
            coef[j] = 0
            j += 1
        if j > free:
            break
    return hist


@njit(cache=True)
def ram_length_batch(coefs, n, ADD, SUB, MUL, INV, VINV):
    """Lengths for a batch of coefficient rows (each of width n + 2)."""
    out = np.empty(coefs.shape[0], dtype=np.int64)
    work = np.zeros((6, n + 2), dtype=np.int64)
    for r in range(coefs.shape[0]):
        out[r] = ram_length_codes(coefs[r], n, ADD, SUB, MUL, INV, VINV, work)
    return out
