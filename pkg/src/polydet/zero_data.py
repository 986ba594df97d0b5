"""Nontrivial zero ordinates: file ingest/export, sign-change scanning on
the critical line for self-dual characters, and density-based truncation
tail estimates for zero sums.

File format: one positive ordinate per line (optionally followed by an
integer multiplicity), '#' starts a comment, and an optional "height: T"
line states the height up to which the table is complete.
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass

import numpy as np

from .config import EvalConfig, DEFAULT_CONFIG
from .errors import (DomainError, EmptyZeroTable, NonMonotoneError,
                     ParseError, UnsupportedCharacter)
from .fields_and_characters import HeckeCharacter, NumberField
from .l_functions import completed_lambda, root_number

__all__ = [
    "ZeroTable",
    "load_zeros",
    "loads_zeros",
    "save_zeros",
    "find_zeros",
    "scan_ordinates",
    "truncation_tail_estimate",
    "zero_count_estimate",
    "builtin_zeta_zeros",
]

_SCAN_STEP = 0.05
_BISECT_TOL = 1e-9
_MAX_SCAN_HEIGHT = 50.0


@dataclass(frozen=True)
class ZeroTable:
    """Ordinates of zeros 1/2 + i gamma with gamma > 0, assumed simple
    unless a multiplicity is given, complete up to completeness_height."""

    label: str
    ordinates: tuple[float, ...]
    completeness_height: float
    multiplicities: tuple[int, ...] = ()
    assumes_critical_line: bool = True

    def __post_init__(self):
        if not self.ordinates:
            raise EmptyZeroTable("zero table has no ordinates")
        arr = np.asarray(self.ordinates)
        if np.any(arr <= 0):
            raise DomainError("ordinates must be positive")
        if np.any(np.diff(arr) <= 0):
            raise NonMonotoneError("ordinates must be strictly increasing")
        if not self.multiplicities:
            object.__setattr__(self, "multiplicities", (1,) * len(self.ordinates))
        if len(self.multiplicities) != len(self.ordinates):
            raise DomainError("multiplicities length mismatch")
        # the table cannot claim completeness beyond its last entry
        h = min(float(self.completeness_height), float(self.ordinates[-1]))
        object.__setattr__(self, "completeness_height", h)

    def __len__(self):
        return len(self.ordinates)

    def truncated(self, n_pairs: int) -> "ZeroTable":
        """The first n_pairs ordinates, complete up to the last kept one."""
        if not 1 <= n_pairs <= len(self.ordinates):
            raise DomainError(f"need 1 <= n_pairs <= {len(self.ordinates)}")
        return ZeroTable(self.label, self.ordinates[:n_pairs],
                         self.ordinates[n_pairs - 1],
                         self.multiplicities[:n_pairs],
                         self.assumes_critical_line)

    def to_text(self) -> str:
        lines = [f"# zeros of {self.label}",
                 f"height: {self.completeness_height:.9f}"]
        for g, m in zip(self.ordinates, self.multiplicities):
            lines.append(f"{g:.12f}" + (f" {m}" if m != 1 else ""))
        return "\n".join(lines) + "\n"


def loads_zeros(text: str, label: str = "table") -> ZeroTable:
    """Parse a zero table from text; see the module docstring for the format."""
    ordinates: list[float] = []
    mults: list[int] = []
    height: float | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("height"):
            parts = line.split(":", 1)
            if len(parts) != 2:
                raise ParseError("malformed height line", lineno)
            try:
                height = float(parts[1])
            except ValueError:
                raise ParseError(f"bad height value {parts[1]!r}", lineno)
            continue
        fields = line.split()
        if len(fields) > 2:
            raise ParseError(f"expected 'ordinate [multiplicity]', got {line!r}",
                             lineno)
        try:
            g = float(fields[0])
        except ValueError:
            raise ParseError(f"bad ordinate {fields[0]!r}", lineno)
        m = 1
        if len(fields) == 2:
            try:
                m = int(fields[1])
            except ValueError:
                raise ParseError(f"bad multiplicity {fields[1]!r}", lineno)
            if m < 1:
                raise ParseError("multiplicity must be >= 1", lineno)
        if g <= 0:
            raise ParseError("ordinates must be positive", lineno)
        if ordinates and g <= ordinates[-1]:
            raise NonMonotoneError(
                f"line {lineno}: ordinate {g} does not increase past "
                f"{ordinates[-1]}")
        ordinates.append(g)
        mults.append(m)
    if not ordinates:
        raise EmptyZeroTable("no ordinates found")
    if height is None:
        height = ordinates[-1]
    return ZeroTable(label, tuple(ordinates), height, tuple(mults))


def load_zeros(path: str, label: str | None = None) -> ZeroTable:
    with open(path) as fh:
        return loads_zeros(fh.read(), label or path)


def save_zeros(table: ZeroTable, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(table.to_text())


def builtin_zeta_zeros() -> ZeroTable:
    """The bundled table of Riemann zeta ordinates (first 100+)."""
    ref = importlib.resources.files("polydet").joinpath("data/zeta_zeros_100.txt")
    return loads_zeros(ref.read_text(), "zeta (bundled)")


# ---------------------------------------------------------------------------
# Sign-change scanning


def _line_component(fld: NumberField, chi: HeckeCharacter,
                    cfg: EvalConfig) -> bool:
    """Whether to scan the real part (root number +1; the completed function
    is real on the critical line) or the imaginary part (root number -1)."""
    w = root_number(fld, chi, cfg=cfg)
    if abs(w - 1.0) < 1e-6:
        return True
    if abs(w + 1.0) < 1e-6:
        return False
    raise UnsupportedCharacter(
        f"root number {w} is not +-1; sign scanning not supported")


def scan_ordinates(fld: NumberField, chi: HeckeCharacter, height: float,
                   cfg: EvalConfig = DEFAULT_CONFIG,
                   step: float = _SCAN_STEP) -> tuple[float, ...]:
    """Ordinates found by a sign-change scan along Re(s) = 1/2; may be empty.

    Workhorse without the desk-scale height cap; prefer find_zeros.
    """
    if not chi.is_self_dual:
        raise UnsupportedCharacter("zero scan requires a self-dual character")
    if height <= 1.0:
        raise DomainError("scan height must exceed 1")
    use_real = _line_component(fld, chi, cfg)

    def g(t: float) -> float:
        v = completed_lambda(fld, chi, 0.5 + 1j * t, cfg)
        return v.real if use_real else v.imag

    # realness sanity probes at generic heights (away from zeros, where the
    # dead component would be 0/0)
    off_slack = 0.0
    for k in range(16):
        v = completed_lambda(fld, chi, 0.5 + 1j * (height * (k + 0.389) / 16.0),
                             cfg)
        if (w := abs(v)) > 1e-280:
            dead = v.imag if use_real else v.real
            off_slack = max(off_slack, abs(dead) / w)
    if off_slack > 1e-6:
        raise UnsupportedCharacter(
            "completed function has a nonvanishing off-component on the "
            f"line (residual {off_slack:.2e})")

    ts = np.arange(0.0, height + step, step)
    ts[-1] = min(ts[-1], height)
    vals = [g(float(t)) for t in ts]
    ordinates: list[float] = []
    for i in range(len(ts) - 1):
        a, b = float(ts[i]), float(ts[i + 1])
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            if a > 0:
                ordinates.append(a)
            continue
        if fa * fb < 0:
            # bisection to the requested ordinate tolerance
            lo, hi, flo = a, b, fa
            while hi - lo > _BISECT_TOL:
                mid = 0.5 * (lo + hi)
                fm = g(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            ordinates.append(0.5 * (lo + hi))
    return tuple(ordinates)


def scan_zeros(fld: NumberField, chi: HeckeCharacter, height: float,
               cfg: EvalConfig = DEFAULT_CONFIG,
               step: float = _SCAN_STEP) -> ZeroTable:
    ordinates = scan_ordinates(fld, chi, height, cfg, step)
    if not ordinates:
        raise EmptyZeroTable(f"no zeros found below height {height}")
    return ZeroTable(f"{fld.label}, {chi.label}", ordinates, height)


def find_zeros(fld: NumberField, chi: HeckeCharacter, height: float,
               cfg: EvalConfig = DEFAULT_CONFIG) -> ZeroTable:
    """Zeros of the completed function with 0 < gamma <= height (<= 50)."""
    if height > _MAX_SCAN_HEIGHT:
        raise DomainError(f"scan height capped at {_MAX_SCAN_HEIGHT}")
    return scan_zeros(fld, chi, height, cfg)


# ---------------------------------------------------------------------------
# Density estimates


def zero_count_estimate(fld: NumberField, chi: HeckeCharacter,
                        height: float) -> float:
    """Main term of the zero counting function N(T) (one sign of the
    ordinate): (T/2pi) (n log(T/2pi e) + log Q)."""
    if height <= 0:
        raise DomainError("height must be positive")
    n = fld.degree
    q = chi.conductor_norm * abs(fld.discriminant)
    t = height / (2.0 * math.pi)
    return t * (n * (math.log(t) - 1.0) + math.log(q)) if t > 0 else 0.0


def truncation_tail_estimate(fld: NumberField, chi: HeckeCharacter,
                             s: complex, z: complex, height: float) -> float:
    """Estimated magnitude of the zero-sum tail over |gamma| > height.

    Integrates the per-zero bound |(z - rho)/2pi|^{-Re s} against the
    density (1/2pi) log(Q (t/2pi)^n) dt for both ordinate signs, then
    doubles the result as a safety factor.  Heuristic, not a certificate.
    """
    s = complex(s)
    z = complex(z)
    sigma = s.real
    if sigma <= 1.0:
        raise DomainError("tail estimate needs Re(s) > 1")
    a = abs(z.imag)
    if height <= a + 1.0:
        raise DomainError("height must exceed |Im z| + 1")
    n = fld.degree
    q = chi.conductor_norm * abs(fld.discriminant)
    A = (height - a) / (2.0 * math.pi)
    j0 = A ** (1.0 - sigma) / (sigma - 1.0)
    j1 = A ** (1.0 - sigma) * (math.log(A) / (sigma - 1.0)
                               + 1.0 / (sigma - 1.0) ** 2)
    shift = math.log1p(a / (2.0 * math.pi * A))
    one_sided = math.log(q) * j0 + n * (j1 + shift * j0)
    return 2.0 * (2.0 * one_sided)
