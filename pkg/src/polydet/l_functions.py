"""Hecke L-functions for the supported family, via Hurwitz zeta assembly.

Global continuation comes for free from the Euler-Maclaurin Hurwitz zeta:

  * zeta(s) = zeta(s, 1),
  * L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q) for Dirichlet chi mod q,
  * zeta_K(s) = zeta(s) L(s, chi_{d_K}) for quadratic K.

On top of that sit the completed function with its gamma factors, the root
number from the functional equation, branch-tracked logarithms along paths,
and contour zero counting by the argument principle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import EvalConfig, DEFAULT_CONFIG
from .errors import (BranchStepTooLarge, DegenerateSample, DomainError,
                     FieldMismatch, GammaPole, NearZeroOfL, NonClosedLoop,
                     PathLeavesOmega, PoleAtOne, ResidualTooLarge,
                     UnsupportedCharacter)
from .fields_and_characters import (HeckeCharacter, NumberField, char_value,
                                    enumerate_prime_ideals,
                                    kronecker_character, trivial_character)
from .quadrature import integrate_polyline
from .special_functions import (_em_core, _em_split, log_gamma)

__all__ = [
    "PathSpec",
    "OmegaRegion",
    "l_value",
    "l_log_derivative",
    "log_l_series",
    "log_l_branch",
    "completed_lambda",
    "conductor_factor",
    "root_number",
    "argument_principle_count",
    "euler_product_value",
]

_POLE_DISTANCE = 0.05      # paths keep this distance from s = 1
_SERIES_MIN_RE = 1.02      # prime power series only used comfortably right of 1
_SMALL_L = 1e-12


# ---------------------------------------------------------------------------
# Path and branch-domain types


@dataclass(frozen=True)
class PathSpec:
    """A polyline s-plane path given by its waypoints."""

    waypoints: tuple[complex, ...]

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise DomainError("path needs at least two waypoints")
        for a, b in zip(self.waypoints[:-1], self.waypoints[1:]):
            if abs(a - b) == 0.0:
                raise DomainError("consecutive waypoints must be distinct")

    @staticmethod
    def line(a: complex, b: complex) -> "PathSpec":
        return PathSpec((complex(a), complex(b)))

    @staticmethod
    def rectangle(re0: float, re1: float, im0: float, im1: float) -> "PathSpec":
        """Closed counterclockwise rectangle [re0, re1] x [im0, im1]."""
        c = (complex(re0, im0), complex(re1, im0), complex(re1, im1),
             complex(re0, im1), complex(re0, im0))
        return PathSpec(c)

    @property
    def is_closed(self) -> bool:
        return abs(self.waypoints[0] - self.waypoints[-1]) < 1e-12

    @property
    def length(self) -> float:
        return sum(abs(b - a) for a, b in
                   zip(self.waypoints[:-1], self.waypoints[1:]))

    @property
    def max_abs_im(self) -> float:
        return max(abs(u.imag) for u in self.waypoints)

    def min_distance_to(self, point: complex) -> float:
        """Distance from the polyline to a point."""
        best = math.inf
        for a, b in zip(self.waypoints[:-1], self.waypoints[1:]):
            seg = b - a
            # orthogonal projection parameter, clamped to the segment
            t = ((point - a).real * seg.real + (point - a).imag * seg.imag) \
                / abs(seg) ** 2
            t = min(1.0, max(0.0, t))
            best = min(best, abs(a + t * seg - point))
        return best


@dataclass(frozen=True)
class OmegaRegion:
    """Cut plane on which the tracked log L is single valued.

    The excluded set is a union of leftward horizontal half-lines: from the
    pole at 1 (principal characters), from the rightmost trivial zero of
    each gamma factor, and from each tabulated nontrivial zero (assumed on
    the critical line).  Membership is only verifiable away from the
    critical line and below the completeness height of the table.
    """

    pole_cut: bool
    trivial_cut_starts: tuple[complex, ...]
    zero_ordinates: tuple[float, ...]
    completeness: float
    tol: float = 1e-9

    def contains(self, w: complex) -> bool:
        w = complex(w)
        if self.pole_cut and abs(w.imag) < self.tol and w.real <= 1.0 + self.tol:
            return False
        for c in self.trivial_cut_starts:
            if abs(w.imag - c.imag) < self.tol and w.real <= c.real + self.tol:
                return False
        for g in self.zero_ordinates:
            if (abs(w.imag - g) < self.tol or abs(w.imag + g) < self.tol) \
                    and w.real <= 0.5 + self.tol:
                return False
        return True

    def verifiable(self, w: complex) -> bool:
        """Whether containment can actually be certified for this point."""
        w = complex(w)
        if w.real > 1.0:
            return True
        if 0.4 - self.tol <= w.real <= 0.6 + self.tol:
            return False
        if abs(w.imag) > self.completeness + self.tol:
            return False
        return True


def omega_region(fld: NumberField, chi: HeckeCharacter,
                 zero_ordinates=(), completeness: float = 0.0) -> OmegaRegion:
    starts = tuple(complex(-abs(pl.m) / pl.nv, -pl.phi)
                   for pl in chi.arch_places())
    return OmegaRegion(chi.epsilon == 1, starts, tuple(float(g) for g in
                       zero_ordinates), float(completeness))


# ---------------------------------------------------------------------------
# Values and s-derivatives by Hurwitz assembly


def _check_pair(fld: NumberField, chi: HeckeCharacter):
    if chi.fld != fld:
        raise FieldMismatch(f"character of {chi.fld} used with {fld}")
    if chi.kind == "dirichlet" and not fld.is_rational:
        raise UnsupportedCharacter("Dirichlet characters live over Q")
    if chi.kind == "trivial":
        return
    if chi.kind != "dirichlet":
        raise UnsupportedCharacter(f"unsupported character kind {chi.kind!r}")
    if fld.degree > 2:
        raise UnsupportedCharacter("only Q and quadratic fields are supported")


def _em_pair(s: complex, z: float, cfg: EvalConfig, minus_pole: bool):
    N = _em_split(s, z, cfg)
    r = _em_core(s, z, N, cfg.bernoulli_terms, minus_pole)
    return r.value, r.ds


def _zeta_and_ds(s: complex, cfg: EvalConfig) -> tuple[complex, complex]:
    if abs(s - 1.0) < cfg.pole_guard:
        raise PoleAtOne(f"s = {s} is inside the pole guard radius")
    return _em_pair(s, 1.0, cfg, minus_pole=False)


def _dirichlet_and_ds(chi: HeckeCharacter, s: complex,
                      cfg: EvalConfig) -> tuple[complex, complex]:
    """L(s, chi) and L'(s, chi) for a primitive non-principal Dirichlet chi.

    Assembled from pole-subtracted Hurwitz zetas; the subtracted poles
    cancel because the character values sum to zero, so the assembly is
    valid at s = 1 as well.
    """
    q = chi.modulus
    qs = cmath.exp(-s * math.log(q))
    tot: complex = 0.0
    dtot: complex = 0.0
    for a in range(1, q):
        v = chi.values[a]
        if v == 0:
            continue
        val, ds = _em_pair(s, a / q, cfg, minus_pole=True)
        tot += v * val
        dtot += v * ds
    L = qs * tot
    dL = -math.log(q) * L + qs * dtot
    return L, dL


@lru_cache(maxsize=16)
def _quadratic_kronecker(fld: NumberField) -> HeckeCharacter:
    return kronecker_character(fld.discriminant)


def _l_and_ds(fld: NumberField, chi: HeckeCharacter, s: complex,
              cfg: EvalConfig) -> tuple[complex, complex]:
    """(L, L') by the analytic route."""
    s = complex(s)
    _check_pair(fld, chi)
    if chi.kind == "dirichlet":
        return _dirichlet_and_ds(chi, s, cfg)
    if fld.is_rational:
        return _zeta_and_ds(s, cfg)
    # Dedekind zeta of a quadratic field: zeta(s) * L(s, chi_disc)
    z, dz = _zeta_and_ds(s, cfg)
    chi_d = _quadratic_kronecker(fld)
    l, dl = _dirichlet_and_ds(chi_d, s, cfg)
    return z * l, dz * l + z * dl


def l_value(fld: NumberField, chi: HeckeCharacter, s: complex,
            cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """L_K(s, chi) for the supported family, continued to s != pole."""
    return _l_and_ds(fld, chi, s, cfg)[0]


def l_log_derivative(fld: NumberField, chi: HeckeCharacter, s: complex,
                     cfg: EvalConfig = DEFAULT_CONFIG,
                     route: str = "analytic") -> complex:
    """(L'/L)(s, chi).

    route "analytic" differentiates the Hurwitz assembly and works wherever
    L is nonzero; route "series" sums the prime power Dirichlet series and
    requires Re(s) > 1 (used as an independent cross-check).
    """
    s = complex(s)
    if route == "series":
        return _log_derivative_series(fld, chi, s, cfg)
    if route != "analytic":
        raise DomainError(f"unknown route {route!r}")
    L, dL = _l_and_ds(fld, chi, s, cfg)
    if abs(L) < _SMALL_L:
        raise NearZeroOfL(f"|L({s})| = {abs(L):.2e} is below {_SMALL_L}")
    return dL / L


# ---------------------------------------------------------------------------
# Prime power series (independent route, Re s > 1)


@lru_cache(maxsize=64)
def _ideal_arrays(fld: NumberField, chi: HeckeCharacter, bound: int):
    ideals = enumerate_prime_ideals(fld, bound)
    norms = np.array([pi.norm for pi in ideals], dtype=np.float64)
    logn = np.log(norms) if len(norms) else norms
    chiv = np.array([char_value(chi, pi) for pi in ideals], dtype=np.complex128)
    return norms, logn, chiv


def _series_l_cutoff(norms: np.ndarray, l: int, sigma: float) -> int:
    """Index cutoff: terms with N^{-l sigma} < 1e-19 are dropped."""
    lim = 10.0 ** (19.0 / (l * sigma))
    return int(np.searchsorted(norms, lim, side="right"))


def _log_derivative_series(fld: NumberField, chi: HeckeCharacter, s: complex,
                           cfg: EvalConfig) -> complex:
    _check_pair(fld, chi)
    if s.real <= _SERIES_MIN_RE:
        raise DomainError(f"series route requires Re(s) > {_SERIES_MIN_RE}")
    norms, logn, chiv = _ideal_arrays(fld, chi, cfg.prime_bound)
    total: complex = 0.0
    l = 1
    while True:
        cut = _series_l_cutoff(norms, l, s.real)
        if cut == 0 or l > 200:
            break
        n = norms[:cut]
        total += complex(np.sum(logn[:cut] * chiv[:cut] ** l
                                * np.exp(-l * s * np.log(n))))
        l += 1
    return -total


def log_l_series(fld: NumberField, chi: HeckeCharacter, s: complex,
                 cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """log L(s, chi) from the absolutely convergent prime power series.

    This is the canonical branch on Re(s) > 1 (it tends to 0 as
    Re(s) -> infinity).
    """
    s = complex(s)
    _check_pair(fld, chi)
    if s.real <= _SERIES_MIN_RE:
        raise DomainError(f"log L series requires Re(s) > {_SERIES_MIN_RE}")
    norms, logn, chiv = _ideal_arrays(fld, chi, cfg.prime_bound)
    total: complex = 0.0
    l = 1
    while True:
        cut = _series_l_cutoff(norms, l, s.real)
        if cut == 0 or l > 200:
            break
        n = norms[:cut]
        total += complex(np.sum(chiv[:cut] ** l * np.exp(-l * s * np.log(n)))) / l
        l += 1
    return total


def euler_product_value(fld: NumberField, chi: HeckeCharacter, s: complex,
                        cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Truncated Euler product exp(sum over prime powers), Re(s) > 1."""
    return cmath.exp(log_l_series(fld, chi, s, cfg))


# ---------------------------------------------------------------------------
# Branch-continued log L along paths


def _path_guard(fld: NumberField, chi: HeckeCharacter, path: PathSpec):
    if chi.epsilon == 1 and path.min_distance_to(1.0) < _POLE_DISTANCE:
        raise PathLeavesOmega(
            f"path passes within {_POLE_DISTANCE} of the pole at s = 1")


def log_l_branch(fld: NumberField, chi: HeckeCharacter, path: PathSpec,
                 cfg: EvalConfig = DEFAULT_CONFIG,
                 omega: OmegaRegion | None = None) -> complex:
    """log L at the end of the path, continued from the series branch.

    The path must start at a real anchor with Re > 1; the anchor value is
    the prime power series and the continuation integrates L'/L.  Waypoints
    are checked against the cut region when one is supplied.
    """
    s0 = complex(path.waypoints[0])
    if abs(s0.imag) > 1e-12 or s0.real <= _SERIES_MIN_RE:
        raise DomainError("path must start at a real anchor with Re > 1")
    _path_guard(fld, chi, path)
    if omega is not None:
        for u in path.waypoints:
            if not omega.contains(u):
                raise PathLeavesOmega(f"waypoint {u} lies on a branch cut")
    anchor = log_l_series(fld, chi, s0, cfg)

    def f(u: complex) -> complex:
        return l_log_derivative(fld, chi, u, cfg)

    res = integrate_polyline(f, path.waypoints, cfg, base_len=0.5)
    # branch sanity: a single panel swallowing more than pi of argument
    # cannot be trusted; the adaptive loop normally prevents this
    if res.error is math.inf:
        raise BranchStepTooLarge("log L continuation did not converge")
    return anchor + res.value


# ---------------------------------------------------------------------------
# Completed function, root number, zero counting


def conductor_factor(fld: NumberField, chi: HeckeCharacter) -> float:
    """N(conductor) |d_K| / (2^{2 r2} pi^n)."""
    n = fld.degree
    return chi.conductor_norm * abs(fld.discriminant) / \
        (4.0 ** fld.r2 * math.pi ** n)


def completed_lambda(fld: NumberField, chi: HeckeCharacter, s: complex,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Completed L-function: pole factor, conductor power, gamma factors.

    Entire for non-principal chi; for principal chi the polynomial factor
    absorbs the poles at 0 and 1 (evaluation exactly at s = 1 is still
    blocked by the pole guard of the L-value route).
    """
    s = complex(s)
    _check_pair(fld, chi)
    gamma_prod: complex = 1.0
    for pl in chi.arch_places():
        w = (pl.nv * (s + 1j * pl.phi) + abs(pl.m)) / 2.0
        if w.real <= 0:
            raise DomainError(
                f"gamma argument {w} has Re <= 0; reflection not implemented")
        if abs(w - round(w.real)) < 1e-8 and round(w.real) <= 0:
            raise GammaPole(f"gamma factor pole at argument {w}")
        gamma_prod *= cmath.exp(log_gamma(w))
    A = conductor_factor(fld, chi)
    out = cmath.exp(0.5 * s * math.log(A)) * l_value(fld, chi, s, cfg) * gamma_prod
    if chi.epsilon == 1:
        out *= 0.5 * s * (s - 1.0)
    return out


def root_number(fld: NumberField, chi: HeckeCharacter,
                s_sample: complex = 0.3 + 2.0j,
                cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """W with Lambda(1 - s, conj chi) = W Lambda(s, chi), from two samples."""
    chib = chi.conjugate()

    def ratio(s: complex) -> complex:
        den = completed_lambda(fld, chi, s, cfg)
        if abs(den) < 1e-250:
            raise DegenerateSample(f"|Lambda({s})| too small for a ratio")
        return completed_lambda(fld, chib, 1.0 - s, cfg) / den

    w1 = ratio(complex(s_sample))
    w2 = ratio(complex(s_sample) + 0.31 + 0.17j)
    if abs(w1 - w2) > 1e-8:
        raise DegenerateSample(
            f"root number differs between samples: {w1} vs {w2}")
    if abs(abs(w1) - 1.0) > 1e-8:
        raise DegenerateSample(f"|W| = {abs(w1)} deviates from 1")
    return w1


def argument_principle_count(fld: NumberField, chi: HeckeCharacter,
                             loop: PathSpec,
                             cfg: EvalConfig = DEFAULT_CONFIG) -> int:
    """(1/2 pi i) contour integral of L'/L: zeros minus poles inside.

    The loop must be closed; for principal characters a loop around s = 1
    counts the pole with weight -1.
    """
    if not loop.is_closed:
        raise NonClosedLoop("argument principle needs a closed loop")

    def f(u: complex) -> complex:
        return l_log_derivative(fld, chi, u, cfg)

    res = integrate_polyline(f, loop.waypoints, cfg, base_len=0.5)
    raw = res.value / (2j * math.pi)
    n = round(raw.real)
    resid = abs(raw - n)
    if resid >= 0.01:
        raise ResidualTooLarge(
            f"winding number residual {resid:.2e} (raw {raw}); "
            "loop may pass too close to a zero")
    return int(n)
