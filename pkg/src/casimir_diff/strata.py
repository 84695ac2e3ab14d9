"""Fresnel and multilayer reflection coefficients at imaginary frequency.

Stacks face vacuum. Layers are listed from the vacuum side inwards and sit
on a semi-infinite substrate. Reflection coefficients are real on the
imaginary axis. Everything is vectorised over ``kperp``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import C
from .errors import ConfigurationError, DomainError
from .materials import DRUDE, DispersionModel, StaticBehavior, Vacuum, check_prescription

TE = "TE"
TM = "TM"
POLARIZATIONS = (TE, TM)

_VACUUM = Vacuum()


@dataclass(frozen=True)
class Layer:
    material: DispersionModel
    thickness: float  # m

    def __post_init__(self):
        if not (self.thickness > 0.0 and np.isfinite(self.thickness)):
            raise ConfigurationError(f"layer thickness must be positive and finite, got {self.thickness!r}")


@dataclass(frozen=True)
class LayerStack:
    substrate: DispersionModel
    layers: tuple[Layer, ...] = field(default=())

    def __post_init__(self):
        if self.substrate is None:
            raise ConfigurationError("layer stack needs a substrate")
        object.__setattr__(self, "layers", tuple(self.layers))

    @classmethod
    def half_space(cls, material: DispersionModel) -> LayerStack:
        return cls(material)

    @property
    def media(self) -> list[DispersionModel]:
        """Vacuum, then each layer, then the substrate."""
        return [_VACUUM, *(layer.material for layer in self.layers), self.substrate]


def _check_pol(polarization: str) -> str:
    if polarization not in POLARIZATIONS:
        raise ConfigurationError(f"polarization must be 'TE' or 'TM', got {polarization!r}")
    return polarization


def kz(epsilon, xi, kperp):
    """Normal decay constant sqrt(eps xi^2 / c^2 + kperp^2) in 1/m."""
    return np.sqrt(epsilon * (xi / C) ** 2 + np.asarray(kperp, dtype=float) ** 2)


def _fresnel_k(polarization, eps_a, eps_b, k_a, k_b):
    if polarization == TE:
        return (k_a - k_b) / (k_a + k_b)
    return (eps_b * k_a - eps_a * k_b) / (eps_b * k_a + eps_a * k_b)


def fresnel(polarization: str, eps_a, eps_b, xi, kperp):
    """Reflection amplitude at the interface from medium a into medium b."""
    _check_pol(polarization)
    return _fresnel_k(polarization, eps_a, eps_b, kz(eps_a, xi, kperp), kz(eps_b, xi, kperp))


def _compose(r_top, phase, r_below):
    # two-interface composition; phase = exp(-2 w k_layer) <= 1
    return (r_top + phase * r_below) / (1.0 + phase * r_top * r_below)


def _stack_from_interfaces(stack: LayerStack, k, eps, polarization):
    """Recursive composition seeded at the substrate.

    ``k`` and ``eps`` are per-medium lists ordered like ``stack.media``.
    """
    n = len(k)
    R = _fresnel_k(polarization, eps[n - 2], eps[n - 1], k[n - 2], k[n - 1])
    for j in range(n - 2, 0, -1):
        phase = np.exp(-2.0 * stack.layers[j - 1].thickness * k[j])
        r_top = _fresnel_k(polarization, eps[j - 1], eps[j], k[j - 1], k[j])
        R = _compose(r_top, phase, R)
    return R


def stack_reflection(polarization: str, stack: LayerStack, xi: float, kperp, prescription: str = DRUDE,
                     eps=None):
    """Reflection coefficient of ``stack`` seen from vacuum.

    ``xi = 0`` takes the exact static limit (see ``static_stack_reflection``).
    ``eps`` optionally supplies precomputed permittivities of ``stack.media``
    at ``xi``.
    """
    _check_pol(polarization)
    if xi < 0.0:
        raise DomainError("xi must be >= 0")
    if xi == 0.0:
        return static_stack_reflection(polarization, stack, kperp, prescription)
    if eps is None:
        eps = [float(m.epsilon(xi)) for m in stack.media]
    kperp = np.asarray(kperp, dtype=float)
    k = [kz(e, xi, kperp) for e in eps]
    return _stack_from_interfaces(stack, k, eps, polarization)


def _static_k(behavior: StaticBehavior, kperp):
    # eps xi^2 -> coefficient only for 1/xi^2 divergence
    if behavior.order == 2:
        return np.sqrt(kperp**2 + behavior.coefficient / C**2)
    return kperp


def _static_tm_interface(a: StaticBehavior, b: StaticBehavior, k_a, k_b):
    if a.order == b.order:
        return _fresnel_k(TM, a.coefficient, b.coefficient, k_a, k_b)
    sign = 1.0 if b.order > a.order else -1.0
    return np.full(np.broadcast(k_a, k_b).shape, sign)


def static_stack_reflection(polarization: str, stack: LayerStack, kperp, prescription: str = DRUDE):
    """Exact xi -> 0 limit of ``stack_reflection`` for kperp > 0.

    TE uses the static classification of ``prescription``; TM uses the
    dissipative (Drude) classification, since the prescriptions differ only
    in the zero-frequency TE term.
    """
    _check_pol(polarization)
    check_prescription(prescription)
    kperp = np.asarray(kperp, dtype=float)
    if np.any(kperp <= 0.0):
        raise DomainError("zero-frequency reflection requires kperp > 0")
    presc = prescription if polarization == TE else DRUDE
    behaviors = [m.static(presc) for m in stack.media]
    k = [_static_k(b, kperp) for b in behaviors]
    if polarization == TE:
        return _stack_from_interfaces(stack, k, [1.0] * len(k), TE)

    n = len(k)
    R = _static_tm_interface(behaviors[n - 2], behaviors[n - 1], k[n - 2], k[n - 1])
    for j in range(n - 2, 0, -1):
        phase = np.exp(-2.0 * stack.layers[j - 1].thickness * k[j])
        r_top = _static_tm_interface(behaviors[j - 1], behaviors[j], k[j - 1], k[j])
        R = _compose(r_top, phase, R)
    return R


def zero_frequency_te_reflection(behavior: StaticBehavior, kperp):
    """Zero-frequency TE reflection of a half-space with the given static behaviour."""
    kperp = np.asarray(kperp, dtype=float)
    if np.any(kperp <= 0.0):
        raise DomainError("kperp must be > 0")
    k_b = _static_k(behavior, kperp)
    return (kperp - k_b) / (kperp + k_b)
