"""Complex-analytic evaluation of the values behind the formal atoms.

The building blocks:

  theta           odd Jacobi theta series  sum_n (-1)^n q^{(n+1/2)^2/2} w^{n+1/2}
  kronecker_f     F(alpha, z) = theta(z + alpha) theta'(0) / (theta(z) theta(alpha))
  f_n             Laurent coefficients of F in alpha (F = sum_n f_n(z) alpha^{n-1}),
                  extracted by a discrete Cauchy integral over an alpha-circle
  emzv_admissible iterated integral of the letters f_{k_i} over the ordered
                  simplex in [0, 1], by nested composite Gauss-Legendre panels
  emzv_regularized constant term of the asymptotic expansion of the cut
                  integral T(eps) in powers of log(-2 pi i eps)

All evaluation shares one dyadically graded panel grid per (tau, config), so
letter values are computed once and every cut integral T(eps) with a dyadic
eps reuses them.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .relations import Expression
from .words import ArgumentError, Index, as_index, is_admissible

TWO_PI_I = 2j * math.pi


class NonConvergence(ArithmeticError):
    """A series failed to reach its truncation target."""


class PoleError(ArithmeticError):
    """Evaluation point too close to a lattice point."""


class AliasError(ArithmeticError):
    """Doubling the Cauchy sample count moved a coefficient noticeably."""


class ToleranceError(ArithmeticError):
    """Grid refinement failed to stabilize an iterated integral."""


class FitError(ArithmeticError):
    """The two regularization fits disagree beyond the allowed margin."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Tau:
    """A point of the upper half-plane."""

    tau: complex

    def __post_init__(self):
        if not (self.tau.imag > 0):
            raise ArgumentError(f"tau must have positive imaginary part, got {self.tau}")

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)


def as_tau(value) -> Tau:
    if isinstance(value, Tau):
        return value
    return Tau(complex(value))


_TAU_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"\s*([+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*$"
)


def parse_tau(text: str) -> Tau:
    """Parse `a+bi` with decimal a and b > 0."""
    m = _TAU_RE.match(text)
    if not m:
        raise ArgumentError(f"cannot parse tau {text!r} (expected a+bi)")
    re_part = float(m.group(1))
    im_part = float(m.group(2).replace(" ", ""))
    return Tau(complex(re_part, im_part))


@dataclass(frozen=True)
class NumericsConfig:
    """Tunable parameters for all numerical evaluation.

    eps0 must be a (negative) power of two so that every sample of the
    regularization fit lands on a grid breakpoint and shares letter values.
    """

    theta_max_terms: int = 256
    rho_factor: float = 0.45
    circle_samples: int = 64
    panel_order: int = 12
    grading_depth: int = 45
    eps0: float = 2.0**-10
    fit_degree_mode: str = "divergent-runs"  # or "length"
    fit_extra_points: int = 6
    fit_eps_blocks: int = 2
    refine_factor: int = 2
    tolerance: float = 1e-6
    pole_tolerance: float = 1e-8
    max_iint_length: int = 6

    def __post_init__(self):
        if self.theta_max_terms < 1:
            raise ArgumentError("theta_max_terms must be >= 1")
        if not (0 < self.rho_factor < 1):
            raise ArgumentError("rho_factor must lie in (0, 1)")
        if self.circle_samples < 8:
            raise ArgumentError("circle_samples too small")
        if not (0 < self.eps0 < 0.1):
            raise ArgumentError("eps0 must lie in (0, 0.1)")
        frac, exp = math.frexp(self.eps0)
        if frac != 0.5:
            raise ArgumentError("eps0 must be a power of two")
        if self.fit_degree_mode not in ("divergent-runs", "length"):
            raise ArgumentError(f"unknown fit_degree_mode {self.fit_degree_mode!r}")
        if self.grading_depth < -math.frexp(self.eps0)[1] + 8:
            raise ArgumentError("grading_depth too shallow for eps0")


DEFAULT_CONFIG = NumericsConfig()

_CONFIG_FIELDS = {f: t for f, t in NumericsConfig.__annotations__.items()}


def parse_config_file(path: str) -> NumericsConfig:
    """Flat `key = value` text file, keys matching NumericsConfig fields."""
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ArgumentError(f"{path}:{line_no}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_FIELDS:
                raise ArgumentError(f"{path}:{line_no}: unknown key {key!r}")
            kind = _CONFIG_FIELDS[key]
            if kind == "int":
                overrides[key] = int(value)
            elif kind == "float":
                overrides[key] = float(value)
            else:
                overrides[key] = value
    return replace(DEFAULT_CONFIG, **overrides)


# ---------------------------------------------------------------------------
# theta and the Kronecker function


def theta(z, tau, cfg: NumericsConfig = DEFAULT_CONFIG):
    """Odd Jacobi theta series at z (scalar or array), truncated adaptively."""
    tau = as_tau(tau)
    zz = np.asarray(z, dtype=complex)
    q = tau.q
    w_half = np.exp(1j * math.pi * zz)
    w_half_inv = np.exp(-1j * math.pi * zz)
    total = np.zeros_like(zz)
    # pair terms n and -n-1: (-1)^n q^{(2n+1)^2/8} (w^{n+1/2} - w^{-n-1/2})
    u = w_half.copy()
    v = w_half_inv.copy()
    u_step = w_half**2
    v_step = w_half_inv**2
    sign = 1.0
    small = 0
    for n in range(cfg.theta_max_terms):
        qpow = q ** ((2 * n + 1) ** 2 / 8.0)
        term = sign * qpow * (u - v)
        total = total + term
        scale = float(np.max(np.abs(total))) or 1.0
        if float(np.max(np.abs(term))) < 1e-17 * scale:
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        u = u * u_step
        v = v * v_step
        sign = -sign
    else:
        raise NonConvergence("theta series did not reach its truncation target")
    out = total if zz.shape else complex(total)
    return out


def theta_prime0(tau, cfg: NumericsConfig = DEFAULT_CONFIG) -> complex:
    """z-derivative of the theta series at z = 0."""
    tau = as_tau(tau)
    q = tau.q
    total = 0.0 + 0.0j
    sign = 1.0
    small = 0
    for n in range(cfg.theta_max_terms):
        term = sign * (2 * n + 1) * q ** ((2 * n + 1) ** 2 / 8.0)
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        sign = -sign
    else:
        raise NonConvergence("theta' series did not reach its truncation target")
    value = TWO_PI_I * total
    if value == 0:
        raise NonConvergence("theta'(0) evaluated to zero")
    return value


def lattice_distance(x: complex, tau: Tau) -> float:
    """Distance from x to the lattice Z + Z tau."""
    t = tau.tau
    b = x.imag / t.imag
    a = x.real - b * t.real
    db = b - round(b)
    da = a - round(a)
    return abs(da + db * t)


def kronecker_f(alpha, z, tau, cfg: NumericsConfig = DEFAULT_CONFIG):
    """Eisenstein-Kronecker series F(alpha, z), scalars or arrays."""
    tau = as_tau(tau)
    alpha_arr = np.asarray(alpha, dtype=complex)
    z_arr = np.asarray(z, dtype=complex)
    for x in np.atleast_1d(alpha_arr).ravel():
        if lattice_distance(complex(x), tau) < cfg.pole_tolerance:
            raise PoleError(f"alpha = {x} is within tolerance of a lattice point")
    for x in np.atleast_1d(z_arr).ravel():
        if lattice_distance(complex(x), tau) < cfg.pole_tolerance:
            raise PoleError(f"z = {x} is within tolerance of a lattice point")
    value = (
        theta(z_arr + alpha_arr, tau, cfg)
        * theta_prime0(tau, cfg)
        / (theta(z_arr, tau, cfg) * theta(alpha_arr, tau, cfg))
    )
    if np.isscalar(alpha) and np.isscalar(z):
        return complex(value)
    return value


# ---------------------------------------------------------------------------
# Gauss-Legendre panels


def _legendre_antiderivative_matrix(order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights, and the matrix A with A[m, j] = int_{-1}^{x_m} ell_j."""
    x, w = np.polynomial.legendre.leggauss(order)
    vander = np.polynomial.legendre.legvander(x, order)  # P_0..P_order at nodes
    coeff = np.empty((order, order))
    for kdeg in range(order):
        coeff[kdeg, :] = (2 * kdeg + 1) / 2.0 * w * vander[:, kdeg]
    qmat = np.empty((order, order))
    qmat[:, 0] = x + 1.0
    for kdeg in range(1, order):
        qmat[:, kdeg] = (vander[:, kdeg + 1] - vander[:, kdeg - 1]) / (2 * kdeg + 1)
    return x, w, qmat @ coeff


class PanelGrid:
    """Composite Gauss-Legendre grid over [0, 1] with dyadic grading.

    Breakpoints are 0, 2^-g (g = depth..1), 1 - 2^-g (g = 2..depth), 1, so
    that both endpoints are resolved geometrically and every dyadic cut
    2^-a / 1 - 2^-a is a panel boundary.
    """

    def __init__(self, order: int, depth: int, split: int = 1):
        bp = [0.0]
        bp += [2.0**-g for g in range(depth, 0, -1)]
        bp += [1.0 - 2.0**-g for g in range(2, depth + 1)]
        bp += [1.0]
        if split > 1:
            fine = []
            for a, b in zip(bp[:-1], bp[1:]):
                fine.extend(a + (b - a) * i / split for i in range(split))
            bp = fine + [1.0]
        self.breakpoints = np.array(bp)
        self.order = order
        xg, wg, amat = _legendre_antiderivative_matrix(order)
        self._wg = wg
        self._amat = amat
        a = self.breakpoints[:-1]
        b = self.breakpoints[1:]
        self._half = (b - a) / 2.0
        self._mid = (a + b) / 2.0
        self.nodes = (self._mid[:, None] + self._half[:, None] * xg[None, :]).ravel()
        self._index = {float(v): i for i, v in enumerate(self.breakpoints)}
        # The panel list is symmetric under z -> 1 - z, so the ascending
        # upper-half nodes are the reflections of the descending lower-half
        # ones.  Letters are sampled on the lower half only and mirrored,
        # which keeps full relative accuracy near z = 1 where the distance
        # 1 - z would otherwise drown in rounding.
        self.n_panels = len(self.breakpoints) - 1
        assert self.n_panels % 2 == 0
        self.lower_nodes = self.nodes[: (self.n_panels // 2) * order]

    def panel_range(self, lo: float, hi: float) -> tuple[int, int]:
        try:
            return self._index[float(lo)], self._index[float(hi)]
        except KeyError as exc:
            raise ArgumentError(f"[{lo}, {hi}] is not aligned with the grid") from exc

    def integrate_nested(
        self, letter_values: Sequence[np.ndarray], lo_panel: int, hi_panel: int
    ) -> complex:
        """Iterated integral of the given letters over lo..hi panels.

        letter_values[i] holds the i-th integrand letter sampled on all grid
        nodes; integration runs left to right, innermost letter first.
        """
        order = self.order
        npanels = hi_panel - lo_panel
        if npanels <= 0:
            return 0.0 + 0.0j
        half = self._half[lo_panel:hi_panel]
        g = np.ones(npanels * order, dtype=complex)
        total = 0.0 + 0.0j
        for values in letter_values:
            h = (g * values[lo_panel * order : hi_panel * order]).reshape(npanels, order)
            panel_ints = half * (h @ self._wg)
            starts = np.concatenate(([0.0], np.cumsum(panel_ints)[:-1]))
            g = (starts[:, None] + half[:, None] * (h @ self._amat.T)).ravel()
            total = complex(panel_ints.sum())
        return total


# ---------------------------------------------------------------------------
# the evaluator


class Evaluator:
    """All numerics for one (tau, config): letters, integrals, value cache."""

    def __init__(self, tau, cfg: NumericsConfig = DEFAULT_CONFIG):
        self.tau = as_tau(tau)
        self.cfg = cfg
        self.rho = cfg.rho_factor * min(1.0, self.tau.tau.imag)
        self.theta_prime0 = theta_prime0(self.tau, cfg)
        self._grids: dict[int, PanelGrid] = {}
        self._letters: dict[tuple[int, int], np.ndarray] = {}  # (split, n) -> values
        self._circle: dict[int, np.ndarray] = {}  # split -> F on nodes x circle, fft'd
        self._values: dict[Index, complex] = {}
        self._cuts: dict[tuple[Index, float, int], complex] = {}

    def grid(self, split: int = 1) -> PanelGrid:
        if split not in self._grids:
            self._grids[split] = PanelGrid(self.cfg.panel_order, self.cfg.grading_depth, split)
        return self._grids[split]

    def _fft_circle(self, split: int) -> np.ndarray:
        if split not in self._circle:
            cfg = self.cfg
            grid = self.grid(split)
            m = cfg.circle_samples
            alphas = self.rho * np.exp(TWO_PI_I * np.arange(m) / m)
            z = grid.lower_nodes[:, None]
            fvals = (
                theta(z + alphas[None, :], self.tau, cfg)
                * self.theta_prime0
                / (theta(z, self.tau, cfg) * theta(alphas, self.tau, cfg)[None, :])
            )
            self._circle[split] = np.fft.fft(fvals, axis=1) / m
        return self._circle[split]

    def letters(self, n: int, split: int = 1) -> np.ndarray:
        """Values of the letter f_n on all grid nodes.

        Computed on the lower half of the symmetric grid and extended by the
        exact reflection f_n(1 - z) = (-1)^n f_n(z).
        """
        key = (split, n)
        if key not in self._letters:
            cfg = self.cfg
            if 2 * n + 8 > cfg.circle_samples:
                raise ArgumentError(
                    f"circle_samples = {cfg.circle_samples} too small for letter {n}"
                )
            fft = self._fft_circle(split)
            m = cfg.circle_samples
            lower = self.rho ** (1 - n) * fft[:, (n - 1) % m]
            sign = -1.0 if n % 2 else 1.0
            self._letters[key] = np.concatenate([lower, sign * lower[::-1]])
        return self._letters[key]

    def f_n(self, n: int, z, split_check: bool = True):
        """Letter f_n at arbitrary points by a one-off Cauchy extraction."""
        cfg = self.cfg
        if n < 0:
            raise ArgumentError("letter order must be non-negative")
        if 2 * n + 8 > cfg.circle_samples:
            raise ArgumentError("circle_samples too small for this letter")
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        for x in zz.ravel():
            if lattice_distance(complex(x), self.tau) < cfg.pole_tolerance:
                raise PoleError(f"z = {x} is within tolerance of a lattice point")

        def extraction(m: int) -> np.ndarray:
            alphas = self.rho * np.exp(TWO_PI_I * np.arange(m) / m)
            fvals = (
                theta(zz[:, None] + alphas[None, :], self.tau, cfg)
                * self.theta_prime0
                / (theta(zz[:, None], self.tau, cfg) * theta(alphas, self.tau, cfg)[None, :])
            )
            fft = np.fft.fft(fvals, axis=1) / m
            return self.rho ** (1 - n) * fft[:, (n - 1) % m]

        base = extraction(cfg.circle_samples)
        if split_check:
            doubled = extraction(2 * cfg.circle_samples)
            if float(np.max(np.abs(base - doubled))) > 1e-9:
                raise AliasError("doubling the circle sample count moved f_n")
            base = doubled
        if np.isscalar(z):
            return complex(base[0])
        return base

    # -- iterated integrals

    def _nested(self, k: Index, lo: float, hi: float, split: int) -> complex:
        grid = self.grid(split)
        letter_values = [self.letters(n, split) for n in k]
        lo_p, hi_p = grid.panel_range(lo, hi)
        return grid.integrate_nested(letter_values, lo_p, hi_p)

    def admissible(self, k: Index) -> complex:
        """Iterated integral over the full simplex; admissible indices only."""
        k = as_index(k)
        if not is_admissible(k):
            raise PreconditionError(f"{k} is not admissible")
        if len(k) > self.cfg.max_iint_length:
            raise PreconditionError(
                f"length {len(k)} exceeds configured limit {self.cfg.max_iint_length}"
            )
        if len(k) == 0:
            return 1.0 + 0.0j
        coarse = self._nested(k, 0.0, 1.0, 1)
        fine = self._nested(k, 0.0, 1.0, 2)
        if abs(coarse - fine) > self.cfg.tolerance:
            raise ToleranceError(
                f"refinement moved I{k} by {abs(coarse - fine):.3e}"
            )
        return fine

    def cut_integral(self, k: Index, eps: float, split: int = 1) -> complex:
        """T(eps): iterated integral over eps < z_1 < ... < z_r < 1 - eps."""
        key = (k, eps, split)
        if key not in self._cuts:
            self._cuts[key] = self._nested(k, eps, 1.0 - eps, split)
        return self._cuts[key]

    # -- regularization

    def _fit_degree(self, k: Index) -> tuple[int, int]:
        """Log-polynomial degree of the main term and of the corrections.

        Only the letter f_1 has boundary poles, so the eps^0 part carries at
        most one log per boundary run of ones, while eps^m corrections can
        pick up a log from every 1-entry (interior ones reach the boundary
        through corners of the simplex, which costs a power of eps).
        """
        r = len(k)
        ones = sum(1 for e in k if e == 1)
        if self.cfg.fit_degree_mode == "length":
            return r, r
        lead = 0
        while lead < r and k[lead] == 1:
            lead += 1
        if lead == r:
            return r, ones
        trail = 0
        while trail < r and k[r - 1 - trail] == 1:
            trail += 1
        return lead + trail, ones

    def _log_eps(self, eps: float) -> complex:
        # branch with log(-i) = -i pi / 2
        return complex(math.log(2 * math.pi * eps), -math.pi / 2)

    def _fit_main_coefficients(
        self, k: Index, eps0: float, npoints: int, degree: int, corr_degree: int
    ) -> tuple[np.ndarray, np.ndarray]:
        """Least-squares solve of T(eps_j) = sum_n c_n L^n + corrections.

        Returns the main coefficients c_0..c_degree together with their noise
        amplification factors (norms of the pseudo-inverse rows), both in the
        original column scaling.
        """
        blocks = self.cfg.fit_eps_blocks
        eps = np.array([eps0 * 2.0**-j for j in range(npoints)])
        tvals = np.array([self.cut_integral(k, e) for e in eps])
        lvals = np.array([self._log_eps(e) for e in eps])
        cols = [lvals**n for n in range(degree + 1)]
        for m in range(1, blocks + 1):
            for n in range(corr_degree + 1):
                cols.append(eps**m * lvals**n)
        design = np.stack(cols, axis=1)
        norms = np.linalg.norm(design, axis=0)
        norms[norms == 0] = 1.0
        pinv = np.linalg.pinv(design / norms, rcond=1e-10)
        coeffs = (pinv @ tvals) / norms
        amps = np.linalg.norm(pinv, axis=1) / norms
        nmain = degree + 1
        return coeffs[:nmain], amps[:nmain]

    def _sample_noise(self, k: Index, eps0: float, npoints: int) -> float:
        """Quadrature noise estimate: split-grid disagreement of T(eps),
        probed at the shallow and the deep end of the sample ladder."""
        worst = 1e-15
        for e in (eps0, eps0 * 2.0 ** -(npoints - 1)):
            coarse = self.cut_integral(k, e, 1)
            fine = self.cut_integral(k, e, 2)
            worst = max(worst, abs(coarse - fine))
        return worst

    def _fit_constant_term(
        self, k: Index, eps0: float, degree: int, corr_degree: int, noise: float
    ) -> complex:
        """Constant term of the log-asymptotics, with insignificant leading
        log powers pruned against the noise estimate.

        Over-parameterized degrees (the length bound is only an upper bound
        on the true log power) turn into pure noise amplification, so leading
        coefficients that are indistinguishable from zero at ten times their
        propagated noise are removed and the system re-solved.
        """
        blocks = self.cfg.fit_eps_blocks
        npoints = (degree + 1) + blocks * (corr_degree + 1) + self.cfg.fit_extra_points
        while True:
            coeffs, amps = self._fit_main_coefficients(
                k, eps0, npoints, degree, corr_degree
            )
            if degree == 0 or abs(coeffs[degree]) >= 10 * noise * amps[degree]:
                return complex(coeffs[0])
            degree -= 1

    def regularized(self, k: Index) -> tuple[complex, float]:
        """Regularized value and an error estimate from the repeated fit."""
        k = as_index(k)
        if len(k) == 0:
            return 1.0 + 0.0j, 0.0
        if len(k) > self.cfg.max_iint_length:
            raise PreconditionError(
                f"length {len(k)} exceeds configured limit {self.cfg.max_iint_length}"
            )
        degree, corr_degree = self._fit_degree(k)
        blocks = self.cfg.fit_eps_blocks
        npoints = (degree + 1) + blocks * (corr_degree + 1) + self.cfg.fit_extra_points
        noise = self._sample_noise(k, self.cfg.eps0, npoints + 1)
        first = self._fit_constant_term(k, self.cfg.eps0, degree, corr_degree, noise)
        second = self._fit_constant_term(
            k, self.cfg.eps0 / self.cfg.refine_factor, degree, corr_degree, noise
        )
        estimate = abs(second - first)
        if estimate > 10 * self.cfg.tolerance:
            raise FitError(
                f"regularization fits for I{k} differ by {estimate:.3e}"
            )
        ratio = self.cfg.refine_factor
        combined = (ratio * second - first) / (ratio - 1)
        return combined, estimate

    # -- values and expressions

    def value(self, k: Index) -> complex:
        """Value of one atom, admissible integrals preferred, cached."""
        k = as_index(k)
        if k not in self._values:
            if is_admissible(k):
                self._values[k] = self.admissible(k)
            else:
                self._values[k], _ = self.regularized(k)
        return self._values[k]

    def eval_expression(self, expr: Expression) -> complex:
        total = 0.0 + 0.0j
        for mon, coeff in expr.items():
            prod = complex(coeff)
            for atom in mon:
                prod *= self.value(atom)
            total += prod
        return total


_EVALUATORS: dict[tuple[complex, NumericsConfig], Evaluator] = {}


def get_evaluator(tau, cfg: NumericsConfig | None = None) -> Evaluator:
    tau = as_tau(tau)
    cfg = cfg or DEFAULT_CONFIG
    key = (tau.tau, cfg)
    if key not in _EVALUATORS:
        _EVALUATORS[key] = Evaluator(tau, cfg)
    return _EVALUATORS[key]


# ---------------------------------------------------------------------------
# public operation wrappers


def f_n(n: int, z, tau, cfg: NumericsConfig | None = None):
    return get_evaluator(tau, cfg).f_n(n, z)


def emzv_admissible(k: Iterable[int], tau, cfg: NumericsConfig | None = None) -> complex:
    return get_evaluator(tau, cfg).admissible(as_index(k))


def emzv_regularized(k: Iterable[int], tau, cfg: NumericsConfig | None = None) -> complex:
    value, _ = get_evaluator(tau, cfg).regularized(as_index(k))
    return value


def eval_expression(expr: Expression, tau, cfg: NumericsConfig | None = None) -> complex:
    return get_evaluator(tau, cfg).eval_expression(expr)


def zeta(s: int) -> float:
    """Riemann zeta at integer s >= 2, plus the convention zeta(0) = -1/2."""
    if s == 0:
        return -0.5
    if not isinstance(s, int) or s < 2:
        raise ArgumentError("zeta is provided for s = 0 and integer s >= 2")
    n = 60
    total = sum(j ** (-float(s)) for j in range(1, n))
    # Euler-Maclaurin tail from n
    total += n ** (1.0 - s) / (s - 1)
    total += 0.5 * n ** (-float(s))
    total += s / 12.0 * n ** (-float(s + 1))
    total -= s * (s + 1) * (s + 2) / 720.0 * n ** (-float(s + 3))
    total += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 * n ** (-float(s + 5))
    return total
