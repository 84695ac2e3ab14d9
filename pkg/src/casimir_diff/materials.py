"""Dielectric response on the imaginary frequency axis.

Every model exposes ``epsilon(xi)`` for ``xi > 0`` (vectorised over numpy
arrays) and ``static(prescription)``, which classifies the ``xi -> 0``
behaviour so the zero-frequency Matsubara term can be taken as an exact
limit instead of being evaluated at a tiny frequency.

All frequencies are angular frequencies in rad/s.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import ev_to_rad_s
from .errors import ConfigurationError, DomainError

DRUDE = "drude"
PLASMA = "plasma"
PRESCRIPTIONS = (DRUDE, PLASMA)


def check_prescription(prescription: str) -> str:
    if prescription not in PRESCRIPTIONS:
        raise ConfigurationError(f"unknown prescription {prescription!r}; expected one of {PRESCRIPTIONS}")
    return prescription


@dataclass(frozen=True)
class StaticBehavior:
    """Leading behaviour of eps(i xi) as xi -> 0.

    ``order`` 0 means a finite static permittivity ``coefficient``;
    order 1 means ``coefficient / xi`` (ohmic conductor, Drude);
    order 2 means ``coefficient / xi**2`` (dissipationless plasma).
    """

    order: int
    coefficient: float

    @property
    def is_finite(self) -> bool:
        return self.order == 0

    def __add__(self, other: StaticBehavior) -> StaticBehavior:
        # susceptibilities add; the most singular term dominates
        if self.order == other.order == 0:
            return StaticBehavior(0, self.coefficient + other.coefficient - 1.0)
        if self.order == other.order:
            return StaticBehavior(self.order, self.coefficient + other.coefficient)
        return self if self.order > other.order else other


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise ConfigurationError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _check_xi(xi):
    xi = np.asarray(xi, dtype=float)
    if np.any(~(xi > 0.0)):
        raise DomainError("imaginary frequency xi must be > 0; use static() for the xi -> 0 limit")
    return xi


class DispersionModel:
    """Base class; subclasses are frozen dataclasses."""

    def epsilon(self, xi):
        xi = _check_xi(xi)
        return self._epsilon(xi)

    def _epsilon(self, xi):  # pragma: no cover - abstract
        raise NotImplementedError

    def static(self, prescription: str = DRUDE) -> StaticBehavior:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Vacuum(DispersionModel):
    def _epsilon(self, xi):
        return np.ones_like(xi)

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        return StaticBehavior(0, 1.0)


@dataclass(frozen=True)
class Drude(DispersionModel):
    """eps(i xi) = 1 + wp^2 / (xi (xi + gamma))."""

    plasma_frequency: float
    relaxation_frequency: float

    def __post_init__(self):
        _positive("plasma_frequency", self.plasma_frequency)
        _positive("relaxation_frequency", self.relaxation_frequency)

    @classmethod
    def from_ev(cls, plasma_ev: float, relaxation_ev: float) -> Drude:
        return cls(ev_to_rad_s(plasma_ev), ev_to_rad_s(relaxation_ev))

    def _epsilon(self, xi):
        return 1.0 + self.plasma_frequency**2 / (xi * (xi + self.relaxation_frequency))

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        if check_prescription(prescription) == PLASMA:
            # relaxation set to zero
            return StaticBehavior(2, self.plasma_frequency**2)
        return StaticBehavior(1, self.plasma_frequency**2 / self.relaxation_frequency)


@dataclass(frozen=True)
class Plasma(DispersionModel):
    """eps(i xi) = 1 + wp^2 / xi^2."""

    plasma_frequency: float

    def __post_init__(self):
        _positive("plasma_frequency", self.plasma_frequency)

    def _epsilon(self, xi):
        return 1.0 + (self.plasma_frequency / xi) ** 2

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        check_prescription(prescription)
        return StaticBehavior(2, self.plasma_frequency**2)


@dataclass(frozen=True)
class Oscillator(DispersionModel):
    """Single undamped oscillator:
    eps(i xi) = eps_inf + (eps_static - eps_inf) w0^2 / (w0^2 + xi^2).
    """

    eps_static: float
    eps_infinity: float
    resonance_frequency: float

    def __post_init__(self):
        _positive("resonance_frequency", self.resonance_frequency)
        if not (self.eps_static >= self.eps_infinity >= 1.0):
            raise ConfigurationError(
                f"oscillator needs eps_static >= eps_infinity >= 1, got {self.eps_static}, {self.eps_infinity}"
            )

    def _epsilon(self, xi):
        w0sq = self.resonance_frequency**2
        return self.eps_infinity + (self.eps_static - self.eps_infinity) * w0sq / (w0sq + xi**2)

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        check_prescription(prescription)
        return StaticBehavior(0, float(self.eps_static))


@dataclass(frozen=True)
class Composite(DispersionModel):
    """``base`` plus the susceptibility of ``addition``: eps = eps_base + eps_add - 1."""

    base: DispersionModel
    addition: DispersionModel

    def _epsilon(self, xi):
        return self.base._epsilon(xi) + self.addition._epsilon(xi) - 1.0

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        return self.base.static(prescription) + self.addition.static(prescription)


# --- tabulated data + Kramers-Kronig -------------------------------------

_GL_SEG_X, _GL_SEG_W = np.polynomial.legendre.leggauss(12)
_GL_TAIL_X, _GL_TAIL_W = np.polynomial.legendre.leggauss(48)


@dataclass(frozen=True, eq=False)
class OpticalTable:
    """Im eps(omega) sampled on a strictly increasing real-frequency grid.

    Below the first row Im eps follows a Drude tail
    ``wp^2 gamma / (omega (omega^2 + gamma^2))`` when ``low_drude`` is a
    ``(wp, gamma)`` pair, and vanishes otherwise. Above the last row it
    decays as ``omega**-high_exponent`` from the last tabulated value.
    """

    omega: np.ndarray
    im_eps: np.ndarray
    low_drude: tuple[float, float] | None = None
    high_exponent: float = 3.0

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float)
        im_eps = np.array(self.im_eps, dtype=float)
        if omega.ndim != 1 or omega.shape != im_eps.shape:
            raise ConfigurationError("optical table columns must be 1-d and of equal length")
        if omega.size < 2:
            raise ConfigurationError("optical table needs at least 2 rows")
        if not np.all(np.isfinite(omega)) or not np.all(np.isfinite(im_eps)):
            raise ConfigurationError("optical table contains non-finite values")
        if omega[0] <= 0.0 or np.any(np.diff(omega) <= 0.0):
            raise ConfigurationError("optical table frequencies must be positive and strictly increasing")
        if np.any(im_eps < 0.0):
            raise ConfigurationError("optical table violates passivity (Im eps < 0)")
        if self.high_exponent < 1.0:
            raise ConfigurationError("high-frequency exponent must be >= 1")
        if self.low_drude is not None:
            wp, gamma = self.low_drude
            object.__setattr__(self, "low_drude", (_positive("low_drude wp", wp), _positive("low_drude gamma", gamma)))
        omega.setflags(write=False)
        im_eps.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "im_eps", im_eps)

    @classmethod
    def from_csv(cls, path, low_drude=None, high_exponent: float = 3.0) -> OpticalTable:
        """Read a ``omega_rad_s,im_eps`` CSV file."""
        path = Path(path)
        try:
            with path.open(newline="") as fh:
                reader = csv.reader(fh)
                header = [h.strip() for h in next(reader, [])]
                if header != ["omega_rad_s", "im_eps"]:
                    raise ConfigurationError(f"{path}: expected header 'omega_rad_s,im_eps', got {','.join(header)!r}")
                rows = []
                for lineno, row in enumerate(reader, start=2):
                    if not row or not "".join(row).strip():
                        continue
                    try:
                        rows.append((float(row[0]), float(row[1])))
                    except (ValueError, IndexError) as exc:
                        raise ConfigurationError(f"{path}:{lineno}: malformed row {row!r}") from exc
        except OSError as exc:
            raise ConfigurationError(f"cannot read optical table {path}: {exc}") from exc
        if not rows:
            raise ConfigurationError(f"{path}: optical table is empty")
        data = np.array(rows)
        return cls(data[:, 0], data[:, 1], low_drude=low_drude, high_exponent=high_exponent)


def _drude_low_integral(wp: float, gamma: float, upper: float, xi: np.ndarray) -> np.ndarray:
    """int_0^upper w ImEps_D(w) / (w^2 + xi^2) dw for the Drude tail."""
    # integrand = wp^2 gamma / ((w^2 + gamma^2)(w^2 + xi^2))
    out = np.empty_like(xi)
    near = np.abs(xi - gamma) < 1e-6 * gamma
    x = xi[~near]
    out[~near] = (np.arctan(upper / gamma) / gamma - np.arctan(upper / x) / x) / (x**2 - gamma**2)
    if np.any(near):
        g = gamma
        # equal-root closed form, accurate to O(|xi - gamma| / gamma)
        out[near] = (np.arctan(upper / g) + g * upper / (upper**2 + g**2)) / (2.0 * g**3)
    return wp**2 * gamma * out


def kramers_kronig(table: OpticalTable, xi) -> np.ndarray | float:
    """eps(i xi) = 1 + (2/pi) int_0^inf w Im eps(w) / (w^2 + xi^2) dw.

    ``xi = 0`` is accepted and yields the static permittivity when the
    low-frequency tail is dielectric.
    """
    scalar = np.ndim(xi) == 0
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi < 0.0) or (table.low_drude is not None and np.any(xi == 0.0)):
        raise DomainError("xi must be > 0 for a conducting table")

    w, im = table.omega, table.im_eps
    total = np.zeros_like(xi)

    if table.low_drude is not None:
        total += _drude_low_integral(*table.low_drude, w[0], xi)

    # tabulated range: log-log linear interpolation, Gauss-Legendre in log(omega)
    lw0, lw1 = np.log(w[:-1]), np.log(w[1:])
    both_pos = (im[:-1] > 0.0) & (im[1:] > 0.0)
    half = 0.5 * (lw1 - lw0)
    u = 0.5 * (lw1 + lw0)[:, None] + half[:, None] * _GL_SEG_X[None, :]
    omega_n = np.exp(u)
    frac = (u - lw0[:, None]) / (lw1 - lw0)[:, None]
    with np.errstate(divide="ignore"):
        loglog = np.exp(np.log(np.where(both_pos, im[:-1], 1.0))[:, None] * (1.0 - frac)
                        + np.log(np.where(both_pos, im[1:], 1.0))[:, None] * frac)
    linear = im[:-1, None] + (im[1:] - im[:-1])[:, None] * (omega_n - w[:-1, None]) / (w[1:] - w[:-1])[:, None]
    im_n = np.where(both_pos[:, None], loglog, linear)
    weights = (half[:, None] * _GL_SEG_W[None, :]) * omega_n  # d omega = omega du
    num = (weights * omega_n * im_n).ravel()
    den_w2 = (omega_n**2).ravel()
    total += (num[None, :] / (den_w2[None, :] + xi[:, None] ** 2)).sum(axis=1)

    # high-frequency tail: Im eps = A (w / W)^-p; substitute s = W / w
    W, A, p = w[-1], im[-1], table.high_exponent
    if A > 0.0:
        s = 0.5 * (_GL_TAIL_X + 1.0)
        ws = 0.5 * _GL_TAIL_W
        vals = A * W**2 * s[None, :] ** (p - 1.0) / (W**2 + (xi[:, None] * s[None, :]) ** 2)
        total += (vals * ws[None, :]).sum(axis=1)

    result = 1.0 + (2.0 / math.pi) * total
    return float(result[0]) if scalar else result


@dataclass(frozen=True, eq=False)
class Tabulated(DispersionModel):
    """Permittivity reconstructed from an ``OpticalTable`` by Kramers-Kronig."""

    table: OpticalTable

    def _epsilon(self, xi):
        return kramers_kronig(self.table, xi)

    def static(self, prescription: str = DRUDE) -> StaticBehavior:
        check_prescription(prescription)
        if self.table.low_drude is None:
            return StaticBehavior(0, float(kramers_kronig(self.table, 0.0)))
        wp, gamma = self.table.low_drude
        if prescription == PLASMA:
            return StaticBehavior(2, wp**2)
        return StaticBehavior(1, wp**2 / gamma)


def eval_permittivity(model: DispersionModel, xi):
    """eps(i xi) of ``model``; raises ``DomainError`` for xi <= 0."""
    return model.epsilon(xi)


def eval_static_limit(model: DispersionModel, prescription: str) -> StaticBehavior:
    return model.static(prescription)


def drude_table(model: Drude, omega) -> OpticalTable:
    """Sample Im eps of a Drude metal, with matching extrapolations."""
    omega = np.asarray(omega, dtype=float)
    wp, g = model.plasma_frequency, model.relaxation_frequency
    im = wp**2 * g / (omega * (omega**2 + g**2))
    return OpticalTable(omega, im, low_drude=(wp, g), high_exponent=3.0)


# --- defaults ------------------------------------------------------------

GOLD = Drude.from_ev(9.0, 0.035)
SILICON = Oscillator(eps_static=11.87, eps_infinity=1.035, resonance_frequency=6.6e15)
SI_C_ADDITION = Drude(plasma_frequency=7e14, relaxation_frequency=1.5e14)
CONDUCTIVE_SILICON = Composite(SILICON, SI_C_ADDITION)

DEFAULT_MATERIALS: dict[str, DispersionModel] = {
    "vacuum": Vacuum(),
    "au": GOLD,
    "si": SILICON,
    "si_c": CONDUCTIVE_SILICON,
}
