"""Higher depth L-functions: log L_K^(r)(s; chi) = sum over prime ideals of
(log N)^(1-r) Li_r(chi(P) N^-s).

Depth 1 recovers the ordinary L-function.  Successive s-derivatives walk
down the depth ladder: d/ds log L^(r) = -log L^(r-1), so the (r-1)-st
derivative of log L^(r) is (-1)^(r-1) log L.  Depths 2 and 3 extend left
of Re(s) = 1 through an iterated-integral representation with a tracked
logarithm along an explicit path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import EvalConfig, DEFAULT_CONFIG
from .errors import (DomainError, NonClosedLoop, PathLeavesOmega,
                     StencilLeavesDomain, UnsupportedCharacter)
from .fields_and_characters import HeckeCharacter, NumberField
from .l_functions import (PathSpec, _check_pair, _ideal_arrays, l_value,
                          log_l_series, omega_region, OmegaRegion)
from .quadrature import tracked_log_polyline
from .zero_data import scan_ordinates

__all__ = [
    "PolyLResult",
    "poly_l_euler",
    "poly_l_log_euler",
    "poly_l_ladder_residual",
    "poly_l_continued",
    "erh_monodromy_defect",
]

_SERIES_MIN_RE = 1.02
_TERM_FLOOR = 1e-19


@dataclass(frozen=True)
class PolyLResult:
    """A depth-r L-value with a certified truncation bound.

    tail_bound is on the scale of value: |true - value| <= tail_bound,
    assuming only the prime-ideal truncation at prime_bound_used.
    """

    value: complex
    log_value: complex
    tail_bound: float
    prime_bound_used: int
    route: str = "euler"

    def to_record(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "tail_bound": self.tail_bound,
            "prime_bound": self.prime_bound_used,
            "route": self.route,
        }


def _tail_log_bound(fld: NumberField, r: int, sigma: float, bound: int) -> float:
    """Bound on the absolute error of log L^(r) from dropping norms > bound.

    Uses |Li_r(x)| <= |x|/(1-|x|) and (log N)^(1-r) <= (log bound)^(1-r),
    with at most deg(K) ideals above each rational prime and inert norms
    p^2 counted separately.
    """
    x = float(bound)
    geo = 1.0 / (1.0 - x ** (-sigma))
    s1 = fld.degree * (x - 1.0) ** (1.0 - sigma) / (sigma - 1.0)
    s2 = 0.0
    if fld.degree > 1:
        rt = math.sqrt(x) - 1.0
        s2 = rt ** (1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0)
    weight = math.log(x) ** (1 - r)
    return weight * geo * (s1 + s2) + 1e-15


def poly_l_log_euler(fld: NumberField, chi: HeckeCharacter, r: int, s: complex,
                     cfg: EvalConfig = DEFAULT_CONFIG,
                     prime_bound: int | None = None) -> tuple[complex, float, int]:
    """log L^(r)(s) from the prime-ideal sum; returns (log, tail_log, bound).

    tail_log bounds the absolute error of the returned logarithm.
    """
    _check_pair(fld, chi)
    if not isinstance(r, int) or r < 1:
        raise DomainError("depth r must be a positive integer")
    s = complex(s)
    sigma = s.real
    if sigma < _SERIES_MIN_RE:
        raise DomainError(
            f"Euler route needs Re(s) >= {_SERIES_MIN_RE}, got {sigma}")
    bound = int(prime_bound or cfg.prime_bound)
    norms, logn, chiv = _ideal_arrays(fld, chi, bound)
    logw = logn ** (1 - r) if r > 1 else np.ones_like(logn)
    total = 0.0 + 0.0j
    lmax = max(1, int(math.ceil(-math.log(_TERM_FLOOR) / (sigma * math.log(2.0)))))
    for l in range(1, lmax + 1):
        # norms beyond the floor cutoff contribute < 1e-19 each at power l
        cut = _TERM_FLOOR ** (-1.0 / (l * sigma))
        k = int(np.searchsorted(norms, cut, side="right"))
        if k == 0:
            break
        nl = np.exp(-l * s * logn[:k])
        total += np.sum(logw[:k] * (chiv[:k] ** l) * nl) / l ** r
    return complex(total), _tail_log_bound(fld, r, sigma, bound), bound


def poly_l_euler(fld: NumberField, chi: HeckeCharacter, r: int, s: complex,
                 cfg: EvalConfig = DEFAULT_CONFIG,
                 prime_bound: int | None = None) -> PolyLResult:
    """L^(r)(s; chi) by truncated Euler sum, valid for Re(s) > 1."""
    logv, tail_log, bound = poly_l_log_euler(fld, chi, r, s, cfg, prime_bound)
    value = complex(np.exp(logv))
    return PolyLResult(value, logv, abs(value) * math.expm1(tail_log), bound)


# ---------------------------------------------------------------------------
# Ladder identity


def _central_stencil(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets and coefficients of the central finite difference for the
    m-th derivative on m+1 symmetric nodes (O(h^2) accurate)."""
    if m % 2 == 0:
        offs = np.arange(-m // 2, m // 2 + 1, dtype=float)
    else:
        half = (m + 1) // 2
        offs = np.array([k for k in range(-half, half + 1) if k != 0],
                        dtype=float)
    n = len(offs)
    V = np.vander(offs, n, increasing=True).T
    rhs = np.zeros(n)
    rhs[m] = math.factorial(m)
    coeffs = np.linalg.solve(V, rhs)
    return offs, coeffs


def poly_l_ladder_residual(fld: NumberField, chi: HeckeCharacter, r: int,
                           s: complex, h: float,
                           cfg: EvalConfig = DEFAULT_CONFIG,
                           target_depth: int = 1) -> float:
    """|FD^(r-d)[log L^(r)](s) - (-1)^(r-d) log L^(d)(s)| with step h.

    Checks that r - d successive derivatives of the depth-r logarithm
    reproduce the depth-d logarithm up to sign, using a central stencil.
    """
    d = target_depth
    if not 1 <= d < r:
        raise DomainError("need 1 <= target_depth < r")
    if h <= 0:
        raise DomainError("step must be positive")
    m = r - d
    offs, coeffs = _central_stencil(m)
    s = complex(s)
    if (s + min(offs) * h).real < _SERIES_MIN_RE:
        raise StencilLeavesDomain(
            f"stencil node Re(s) {(s + min(offs) * h).real} below "
            f"{_SERIES_MIN_RE}")
    fd = 0.0 + 0.0j
    for k, c in zip(offs, coeffs):
        fd += c * poly_l_log_euler(fld, chi, r, s + k * h, cfg)[0]
    fd /= h ** m
    target = (-1.0) ** m * poly_l_log_euler(fld, chi, d, s, cfg)[0]
    return abs(fd - target)


# ---------------------------------------------------------------------------
# Continuation left of Re(s) = 1


def _omega_for_path(fld: NumberField, chi: HeckeCharacter, path: PathSpec,
                    cfg: EvalConfig) -> OmegaRegion | None:
    """Zero-cut region for a path that dips into the critical strip."""
    if min(w.real for w in path.waypoints) > _SERIES_MIN_RE \
            and path.min_distance_to(1.0) > 0.05:
        return None
    need = max(path.max_abs_im + 5.0, 5.0)
    if not chi.is_self_dual:
        raise UnsupportedCharacter(
            "continuation into the strip needs a zero table; only self-dual "
            "characters are scanned automatically")
    return omega_region(fld, chi, scan_ordinates(fld, chi, need, cfg), need)


def poly_l_continued(fld: NumberField, chi: HeckeCharacter, r: int, s: complex,
                     cfg: EvalConfig = DEFAULT_CONFIG,
                     anchor: float = 3.0,
                     path: PathSpec | None = None) -> PolyLResult:
    """L^(r)(s) for r in {2, 3} by iterated integration from a real anchor.

    Taylor data at the anchor plus the collapsed kernel integral of log L
    along the path:

        log L^(r)(s) = sum_{k=0}^{r-2} ((-1)^k / k!) (s-a)^k log L^(r-k)(a)
                       + ((-1)^(r-1) / (r-2)!) int_a^s (s-xi)^(r-2) log L(xi) dxi

    The logarithm under the integral is branch-tracked from the real Euler
    value at the anchor.  The path must stay inside the zero-free cut
    region; points too close to the critical line are flagged.
    """
    _check_pair(fld, chi)
    if r not in (2, 3):
        raise DomainError("continuation implemented for depths 2 and 3")
    s = complex(s)
    a = float(anchor)
    if a < 1.5:
        raise DomainError("anchor must be real with a >= 1.5")
    if path is None and abs(s - a) < 1e-9:
        # s sits at the anchor: the remainder integral vanishes and only
        # the k = 0 Taylor term survives
        lg, tl, bound = poly_l_log_euler(fld, chi, r, a, cfg)
        value = complex(np.exp(lg))
        return PolyLResult(value, lg, abs(value) * math.expm1(tl), bound,
                           route="continued")
    if path is None:
        path = PathSpec((complex(a), s))
    wps = path.waypoints
    if abs(wps[0] - a) > 1e-9 or abs(wps[-1] - s) > 1e-9:
        raise DomainError("path must run from the anchor to s")

    omega = _omega_for_path(fld, chi, path, cfg)
    flagged: list[complex] = []

    def lfun(xi: complex) -> complex:
        if omega is not None:
            if not omega.contains(xi):
                raise PathLeavesOmega(f"path point {xi} leaves the cut region")
            if not omega.verifiable(xi):
                flagged.append(xi)
        return l_value(fld, chi, xi, cfg)

    def kernel(xi: complex) -> complex:
        return 1.0 + 0.0j if r == 2 else (s - xi)

    anchor_log, tail_log, bound = poly_l_log_euler(fld, chi, 1, a, cfg)
    tracked = tracked_log_polyline(lfun, wps, cfg, kernel=kernel,
                                   anchor=anchor_log, tol=cfg.quad_tol)
    if flagged:
        warnings.warn(
            f"{len(flagged)} path points within 0.1 of the critical line or "
            "beyond the zero table height; continuation there rests on the "
            "assumed zero locations", stacklevel=2)

    logv = 0.0 + 0.0j
    tail_total = 0.0
    for k in range(r - 1):
        lg, tl, _ = poly_l_log_euler(fld, chi, r - k, a, cfg)
        coef = ((-1.0) ** k / math.factorial(k)) * (s - a) ** k
        logv += coef * lg
        tail_total += abs(coef) * tl
    sign = (-1.0) ** (r - 1) / math.factorial(r - 2)
    logv += sign * tracked.value
    # |s - xi| is convex on each segment, so its path maximum sits at a node
    kmax = 1.0 if r == 2 else max(abs(s - w) for w in wps)
    tail_total += abs(sign) * (tracked.error + path.length * kmax * tail_log)
    value = complex(np.exp(logv))
    return PolyLResult(value, logv, abs(value) * math.expm1(tail_total),
                       bound, route="continued")


def erh_monodromy_defect(fld: NumberField, chi: HeckeCharacter,
                         loop: PathSpec,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """-contour integral of the tracked log of (xi-1)^eps L(xi) over a loop.

    For a closed loop in Re(s) > 0.55 keeping distance >= 0.05 from s = 1,
    the integrand is analytic and zero-free inside whenever all nontrivial
    zeros in the enclosed region lie on the critical line, making the
    defect vanish.  A zero rho of order m strictly inside contributes
    2 pi i m (rho - xi0) where xi0 is the loop basepoint.
    """
    _check_pair(fld, chi)
    if not loop.is_closed:
        raise NonClosedLoop("monodromy defect needs a closed loop")
    if min(w.real for w in loop.waypoints) <= 0.55:
        raise DomainError("loop must stay in Re(s) > 0.55")
    if loop.min_distance_to(1.0) < 0.05:
        raise DomainError("loop must keep distance >= 0.05 from s = 1")
    eps = chi.epsilon

    def wf(xi: complex) -> complex:
        v = l_value(fld, chi, xi, cfg)
        return v * (xi - 1.0) ** eps if eps else v

    tracked = tracked_log_polyline(wf, loop.waypoints, cfg, tol=cfg.quad_tol)
    return -tracked.value
