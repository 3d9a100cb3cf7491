"""Numba-jitted implementations of the hot inner loops.

Same signatures and semantics as kernels.numpy_impl.  The polyline scan is
the single most expensive kernel (cells x segments); it parallelizes over
points with no reductions, so results are bit-reproducible run to run.
"""

import numpy as np
from numba import njit, prange

NAME = "numba"


@njit(cache=True)
def laplacian(f, inv_h2, periodic, bval):
    ny, nx = f.shape
    out = np.empty((ny, nx))
    tb = 2.0 * bval
    for j in range(ny):
        for i in range(nx):
            c = f[j, i]
            if i > 0:
                w = f[j, i - 1]
            elif periodic:
                w = f[j, nx - 1]
            else:
                w = tb - c
            if i < nx - 1:
                e = f[j, i + 1]
            elif periodic:
                e = f[j, 0]
            else:
                e = tb - c
            if j > 0:
                s = f[j - 1, i]
            elif periodic:
                s = f[ny - 1, i]
            else:
                s = tb - c
            if j < ny - 1:
                n = f[j + 1, i]
            elif periodic:
                n = f[0, i]
            else:
                n = tb - c
            out[j, i] = (w + e + s + n - 4.0 * c) * inv_h2
    return out


@njit(cache=True)
def upwind2(fpad, uc, vc, inv_2h):
    ny, nx = uc.shape
    out = np.empty((ny, nx))
    for j in range(ny):
        jp = j + 2
        for i in range(nx):
            ip = i + 2
            f0 = fpad[jp, ip]
            u = uc[j, i]
            v = vc[j, i]
            if u > 0.0:
                dx = (3.0 * f0 - 4.0 * fpad[jp, ip - 1] + fpad[jp, ip - 2]) * inv_2h
            else:
                dx = (-3.0 * f0 + 4.0 * fpad[jp, ip + 1] - fpad[jp, ip + 2]) * inv_2h
            if v > 0.0:
                dy = (3.0 * f0 - 4.0 * fpad[jp - 1, ip] + fpad[jp - 2, ip]) * inv_2h
            else:
                dy = (-3.0 * f0 + 4.0 * fpad[jp + 1, ip] - fpad[jp + 2, ip]) * inv_2h
            out[j, i] = u * dx + v * dy
    return out


@njit(cache=True, parallel=True)
def polyline_scan(xs, ys, ax, ay, bx, by, cum):
    m = xs.shape[0]
    n = ax.shape[0]
    d = np.empty(m)
    s = np.empty(m)
    fx = np.empty(m)
    fy = np.empty(m)
    for p in prange(m):
        px = xs[p]
        py = ys[p]
        best = 1e300
        bs = 0.0
        bfx = 0.0
        bfy = 0.0
        inside = False
        for k in range(n):
            dx = bx[k] - ax[k]
            dy = by[k] - ay[k]
            ln2 = dx * dx + dy * dy
            t = ((px - ax[k]) * dx + (py - ay[k]) * dy) / ln2
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            qx = ax[k] + t * dx
            qy = ay[k] + t * dy
            dd = (qx - px) * (qx - px) + (qy - py) * (qy - py)
            if dd < best:
                best = dd
                bs = cum[k] + t * np.sqrt(ln2)
                bfx = qx
                bfy = qy
            if (ay[k] > py) != (by[k] > py):
                if px < ax[k] + (py - ay[k]) * dx / dy:
                    inside = not inside
        r = np.sqrt(best)
        d[p] = r if inside else -r
        s[p] = bs
        fx[p] = bfx
        fy[p] = bfy
    return d, s, fx, fy


@njit(cache=True)
def any_self_intersection(mx, my):
    n = mx.shape[0]
    for i in range(n):
        ia = i
        ib = (i + 1) % n
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            ja = j
            jb = (j + 1) % n
            ux = mx[ib] - mx[ia]
            uy = my[ib] - my[ia]
            wx = mx[jb] - mx[ja]
            wy = my[jb] - my[ja]
            d1 = ux * (my[ja] - my[ia]) - uy * (mx[ja] - mx[ia])
            d2 = ux * (my[jb] - my[ia]) - uy * (mx[jb] - mx[ia])
            d3 = wx * (my[ia] - my[ja]) - wy * (mx[ia] - mx[ja])
            d4 = wx * (my[ib] - my[ja]) - wy * (mx[ib] - mx[ja])
            if d1 * d2 < 0.0 and d3 * d4 < 0.0:
                return True
    return False
