"""Pure-numpy implementations of the hot inner loops.

Mirror of kernels.numba_impl with identical signatures and semantics, used
when NSACLAB_BACKEND=numpy or when numba is unavailable.  Everything here is
vectorized; the polyline scan is chunked over points to bound the size of the
(points x segments) temporaries.
"""

import numpy as np

NAME = "numpy"


def laplacian(f, inv_h2, periodic, bval):
    """5-point Laplacian of a cell-centered array.

    Dirichlet walls use the ghost value 2*bval - f_edge so the wall-face
    average equals the boundary datum bval.
    """
    ny, nx = f.shape
    fp = np.empty((ny + 2, nx + 2), dtype=np.float64)
    fp[1:-1, 1:-1] = f
    if periodic:
        fp[0, 1:-1] = f[-1, :]
        fp[-1, 1:-1] = f[0, :]
        fp[1:-1, 0] = f[:, -1]
        fp[1:-1, -1] = f[:, 0]
    else:
        tb = 2.0 * bval
        fp[0, 1:-1] = tb - f[0, :]
        fp[-1, 1:-1] = tb - f[-1, :]
        fp[1:-1, 0] = tb - f[:, 0]
        fp[1:-1, -1] = tb - f[:, -1]
    return (fp[:-2, 1:-1] + fp[2:, 1:-1] + fp[1:-1, :-2] + fp[1:-1, 2:]
            - 4.0 * f) * inv_h2


def upwind2(fpad, uc, vc, inv_2h):
    """Second-order upwind advection term u*df/dx + v*df/dy.

    fpad carries two ghost layers on every side; uc, vc are the advecting
    velocity components collocated with the interior samples of fpad.
    """
    f0 = fpad[2:-2, 2:-2]
    dxm = (3.0 * f0 - 4.0 * fpad[2:-2, 1:-3] + fpad[2:-2, 0:-4]) * inv_2h
    dxp = (-3.0 * f0 + 4.0 * fpad[2:-2, 3:-1] - fpad[2:-2, 4:]) * inv_2h
    dym = (3.0 * f0 - 4.0 * fpad[1:-3, 2:-2] + fpad[0:-4, 2:-2]) * inv_2h
    dyp = (-3.0 * f0 + 4.0 * fpad[3:-1, 2:-2] - fpad[4:, 2:-2]) * inv_2h
    return (uc * np.where(uc > 0.0, dxm, dxp)
            + vc * np.where(vc > 0.0, dym, dyp))


def polyline_scan(xs, ys, ax, ay, bx, by, cum):
    """Signed distance and foot-point data from points to a closed polyline.

    Segments run a[k] -> b[k]; cum[k] is the arclength at a[k].  Returns
    (d, s, fx, fy): signed distance (positive inside, even-odd parity),
    arclength of the foot point, and the foot-point coordinates.
    """
    m = xs.shape[0]
    dx = bx - ax
    dy = by - ay
    ln2 = dx * dx + dy * dy
    ln = np.sqrt(ln2)
    d = np.empty(m)
    s = np.empty(m)
    fx = np.empty(m)
    fy = np.empty(m)
    inside = np.zeros(m, dtype=bool)
    chunk = 4096
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        px = xs[lo:hi, None]
        py = ys[lo:hi, None]
        t = ((px - ax) * dx + (py - ay) * dy) / ln2
        np.clip(t, 0.0, 1.0, out=t)
        qx = ax + t * dx - px
        qy = ay + t * dy - py
        dd = qx * qx + qy * qy
        k = np.argmin(dd, axis=1)
        rows = np.arange(hi - lo)
        d[lo:hi] = np.sqrt(dd[rows, k])
        s[lo:hi] = cum[k] + t[rows, k] * ln[k]
        fx[lo:hi] = px[:, 0] + qx[rows, k]
        fy[lo:hi] = py[:, 0] + qy[rows, k]
        crosses = (ay > py) != (by > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = ax + (py - ay) * dx / dy
        hits = crosses & (px < xint)
        inside[lo:hi] = (hits.sum(axis=1) % 2).astype(bool)
    return np.where(inside, d, -d), s, fx, fy


def any_self_intersection(mx, my):
    """True if any two non-adjacent segments of the closed chain cross."""
    n = mx.shape[0]
    ax, ay = mx, my
    bx = np.roll(mx, -1)
    by = np.roll(my, -1)
    ux = bx - ax
    uy = by - ay
    # d1[i,j] = cross(u_i, a_j - a_i), d2[i,j] = cross(u_i, b_j - a_i)
    d1 = ux[:, None] * (ay[None, :] - ay[:, None]) \
        - uy[:, None] * (ax[None, :] - ax[:, None])
    d2 = ux[:, None] * (by[None, :] - ay[:, None]) \
        - uy[:, None] * (bx[None, :] - ax[:, None])
    proper = (d1 * d2 < 0.0) & (d1.T * d2.T < 0.0)
    idx = np.arange(n)
    gap = (idx[None, :] - idx[:, None]) % n
    nonadj = (gap > 1) & (gap < n - 1)
    return bool(np.any(proper & nonadj))
