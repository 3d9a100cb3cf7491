"""One-dimensional equilibrium interface profile.

The transition layer of the order parameter follows the heteroclinic
solution of -theta'' + f'(theta) = 0, theta(0) = 0, theta(+-inf) = +-1.
Multiplying by theta' and integrating gives the equipartition first
integral theta' = sqrt(2 f(theta)), which this module integrates on a
uniform grid.  For the default quartic well f(c) = (1 - c^2)^2 / 8 the
solution is tanh(rho/2) in closed form, used as the test oracle.

The table also carries sigma = int theta'^2 (energy per unit interface
length), the tail decay rate alpha = min(sqrt(f''(-1)), sqrt(f''(1))),
and eta(rho) = -1 + (2/sigma) int_{-inf}^rho theta'^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_simpson, simpson, solve_ivp
from scipy.interpolate import CubicHermiteSpline


@dataclass(frozen=True)
class Potential:
    """Double-well energy density with wells at c = -1 and c = +1."""

    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    d2f: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"

    def validate(self) -> None:
        """Sampling checks: wells at +-1, positivity and symmetry between."""
        for c in (-1.0, 1.0):
            if abs(float(self.f(c))) > 1e-12:
                raise ValueError(f"{self.name}: f({c:+.0f}) must vanish")
            if abs(float(self.df(c))) > 1e-12:
                raise ValueError(f"{self.name}: f'({c:+.0f}) must vanish")
            if float(self.d2f(c)) <= 0.0:
                raise ValueError(f"{self.name}: f''({c:+.0f}) must be positive")
        cs = np.linspace(-0.999, 0.999, 201)
        fs = np.asarray(self.f(cs), dtype=float)
        if np.any(fs <= 0.0):
            raise ValueError(f"{self.name}: f must be positive on (-1, 1)")
        if np.max(np.abs(fs - fs[::-1])) > 1e-12 * max(1.0, float(fs.max())):
            raise ValueError(f"{self.name}: f must be even in c")


def quartic() -> Potential:
    return Potential(
        f=lambda c: 0.125 * (1.0 - c * c) ** 2,
        df=lambda c: 0.5 * (c * c * c - c),
        d2f=lambda c: 0.5 * (3.0 * c * c - 1.0),
        name="quartic",
    )


def scaled(lam: float) -> Potential:
    """lam * quartic; steepens the well, alpha scales by sqrt(lam)."""
    if lam <= 0.0:
        raise ValueError("scale factor must be positive")
    q = quartic()
    return Potential(
        f=lambda c: lam * q.f(c),
        df=lambda c: lam * q.df(c),
        d2f=lambda c: lam * q.d2f(c),
        name=f"quartic*{lam:g}",
    )


def tanh_profile(rho):
    """Closed-form profile for the quartic well: tanh(rho/2)."""
    return np.tanh(np.asarray(rho, dtype=float) * 0.5)


def decay_rate(pot: Potential) -> float:
    """Tail rate alpha = min(sqrt(f''(-1)), sqrt(f''(1)))."""
    wm = float(pot.d2f(-1.0))
    wp = float(pot.d2f(1.0))
    if wm <= 0.0 or wp <= 0.0:
        raise ValueError("f'' must be positive at both wells")
    return min(np.sqrt(wm), np.sqrt(wp))


@dataclass
class ProfileTable:
    rho: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    d2theta: np.ndarray
    sigma: float
    alpha: float
    eta: np.ndarray
    _spline: CubicHermiteSpline = field(repr=False, default=None)
    _tail_coeff: float = field(repr=False, default=0.0)

    @property
    def L(self) -> float:
        return float(self.rho[-1])

    def __post_init__(self):
        if self._spline is None:
            self._spline = CubicHermiteSpline(self.rho, self.theta, self.dtheta)
        if self._tail_coeff == 0.0:
            self._tail_coeff = (1.0 - float(self.theta[-1])) * np.exp(
                self.alpha * self.L)

    def evaluate(self, rho):
        """theta at arbitrary rho: Hermite interpolation on the table,
        analytic exponential tail 1 - C exp(-alpha|rho|) beyond, blended
        over the last decade of the table."""
        r = np.asarray(rho, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        a = np.abs(r)
        sgn = np.where(r >= 0.0, 1.0, -1.0)
        out = np.empty_like(r)
        inside = a <= self.L
        if np.any(inside):
            out[inside] = self._spline(r[inside])
        far = ~inside
        if np.any(far):
            out[far] = sgn[far] * (
                1.0 - self._tail_coeff * np.exp(-self.alpha * a[far]))
        blend = inside & (a >= 0.9 * self.L)
        if np.any(blend):
            w = (a[blend] - 0.9 * self.L) / (0.1 * self.L)
            w = w * w * (3.0 - 2.0 * w)
            tail = sgn[blend] * (
                1.0 - self._tail_coeff * np.exp(-self.alpha * a[blend]))
            out[blend] = (1.0 - w) * out[blend] + w * tail
        np.clip(out, -1.0, 1.0, out=out)
        return float(out[0]) if scalar else out


def _half_profile(pot: Potential, L: float, m: int) -> np.ndarray:
    """Integrate theta' = sqrt(2 f(theta)) from theta(0) = 0 over [0, L]."""
    def rhs(_, y):
        c = y[0]
        if c >= 1.0:
            return [0.0]
        return [np.sqrt(max(2.0 * float(pot.f(c)), 0.0))]

    grid = np.linspace(0.0, L, m)
    sol = solve_ivp(rhs, (0.0, L), [0.0], t_eval=grid, method="DOP853",
                    rtol=1e-12, atol=1e-14, max_step=0.25)
    if not sol.success:
        raise ValueError(f"profile integration failed: {sol.message}")
    return np.minimum(sol.y[0], 1.0)


def solve_profile(pot: Potential, L: float = 20.0, n: int = 4001) -> ProfileTable:
    """Tabulate the increasing odd profile on n uniform samples of [-L, L].

    Uses the first integral theta' = sqrt(2 f(theta)) (integrated in rho so
    the output lands directly on the uniform grid) and mirrors the half
    table, which makes oddness exact.
    """
    pot.validate()
    if L <= 0.0:
        raise ValueError("L must be positive")
    if n < 9 or n % 2 == 0:
        raise ValueError("n must be odd and at least 9")
    m = (n + 1) // 2
    alpha = decay_rate(pot)
    half = _half_profile(pot, L, m)
    theta = np.concatenate([-half[:0:-1], half])
    rho = np.linspace(-L, L, n)
    dtheta = np.sqrt(np.maximum(2.0 * np.asarray(pot.f(theta), dtype=float), 0.0))
    d2theta = np.asarray(pot.df(theta), dtype=float)
    if np.any(np.diff(theta) <= 0.0):
        raise ValueError("profile table is not strictly increasing")
    if L >= 20.0 and not (0.0 < 1.0 - theta[-1] <= 2e-8):
        raise ValueError("profile tail did not reach the well")
    tab = ProfileTable(rho=rho, theta=theta, dtheta=dtheta, d2theta=d2theta,
                       sigma=0.0, alpha=alpha, eta=np.zeros_like(rho))
    tab.sigma = surface_tension(tab)
    tab.eta = eta_profile(tab)
    return tab


def surface_tension(tab: ProfileTable) -> float:
    """sigma = int theta'^2 by composite Simpson plus analytic tails."""
    body = float(simpson(tab.dtheta ** 2, x=tab.rho))
    tail = (tab.dtheta[0] ** 2 + tab.dtheta[-1] ** 2) / (2.0 * tab.alpha)
    sigma = body + tail
    if tail > 1e-10 * sigma:
        raise ValueError(
            f"table too short: tail mass {tail:.3e} exceeds 1e-10 of sigma")
    return sigma


def eta_profile(tab: ProfileTable) -> np.ndarray:
    """eta(rho) = -1 + (2/sigma) int_{-inf}^rho theta'^2."""
    sigma = tab.sigma if tab.sigma > 0.0 else surface_tension(tab)
    left_tail = tab.dtheta[0] ** 2 / (2.0 * tab.alpha)
    cum = cumulative_simpson(tab.dtheta ** 2, x=tab.rho, initial=0.0)
    return -1.0 + (2.0 / sigma) * (left_tail + cum)


def dump_profile(tab: ProfileTable, path) -> None:
    with open(path, "w") as fh:
        fh.write("rho,theta0,dtheta0,eta\n")
        for r, t, dt, e in zip(tab.rho, tab.theta, tab.dtheta, tab.eta):
            fh.write(f"{r!r},{t!r},{dt!r},{e!r}\n")


def load_profile_csv(path) -> dict[str, np.ndarray]:
    """Read back a profile CSV as plain column arrays (for tooling/tests)."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "rho,theta0,dtheta0,eta":
            raise ValueError(f"unexpected profile CSV header: {header!r}")
        data = np.loadtxt(fh, delimiter=",")
    return {"rho": data[:, 0], "theta0": data[:, 1],
            "dtheta0": data[:, 2], "eta": data[:, 3]}
