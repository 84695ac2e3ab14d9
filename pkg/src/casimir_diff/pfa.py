"""Proximity-force mapping onto the sphere-over-split-slab apparatus.

A Au-coated sphere faces a slab whose two regions (dielectric Si and Au)
are both covered by a thin conducting over-layer. The observable is the
force difference between the sphere sitting deep over the Si region and
deep over the Au region, ``dF = F_si - F_au``, each side treated as a
sphere over an infinite two-layer slab.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigurationError
from .lifshitz import FREE_ENERGY, GRADIENT, PRESSURE, GapConfiguration, QuadratureSpec, ThermalSpec, evaluate
from .materials import CONDUCTIVE_SILICON, GOLD, SILICON, DispersionModel
from .strata import Layer, LayerStack

SI_SIDE = "si"
AU_SIDE = "au"


@dataclass(frozen=True)
class ApparatusGeometry:
    """Sphere radius, over-layer thicknesses and an optional surface step.

    ``step_height`` raises the sphere by that amount above the region named
    by ``step_side``, so that side is evaluated at ``a + step_height``.
    """

    sphere_radius: float = 150e-6
    overlayer_thickness_si_side: float = 100e-9
    overlayer_thickness_au_side: float = 100e-9
    step_height: float = 0.0
    step_side: str = SI_SIDE
    sphere_coating: DispersionModel = GOLD
    substrate_si: DispersionModel = SILICON
    substrate_au: DispersionModel = GOLD
    overlayer_material: DispersionModel = CONDUCTIVE_SILICON

    def __post_init__(self):
        if not self.sphere_radius > 0.0:
            raise ConfigurationError("sphere_radius must be > 0")
        if not (self.overlayer_thickness_si_side > 0.0 and self.overlayer_thickness_au_side > 0.0):
            raise ConfigurationError("over-layer thicknesses must be > 0")
        if not self.step_height >= 0.0:
            raise ConfigurationError("step_height must be >= 0")
        if self.step_side not in (SI_SIDE, AU_SIDE):
            raise ConfigurationError(f"step_side must be 'si' or 'au', got {self.step_side!r}")

    def plate(self, side: str) -> LayerStack:
        if side == SI_SIDE:
            return LayerStack(self.substrate_si, (Layer(self.overlayer_material, self.overlayer_thickness_si_side),))
        return LayerStack(self.substrate_au, (Layer(self.overlayer_material, self.overlayer_thickness_au_side),))

    def separation(self, side: str, a: float) -> float:
        return a + self.step_height if side == self.step_side else a

    def swapped(self) -> ApparatusGeometry:
        """Exchange the roles of the two regions (substrates, thicknesses, step)."""
        return replace(
            self,
            substrate_si=self.substrate_au,
            substrate_au=self.substrate_si,
            overlayer_thickness_si_side=self.overlayer_thickness_au_side,
            overlayer_thickness_au_side=self.overlayer_thickness_si_side,
            step_side=AU_SIDE if self.step_side == SI_SIDE else SI_SIDE,
        )

    def gap(self, side: str, a: float) -> GapConfiguration:
        return GapConfiguration(LayerStack(self.sphere_coating), self.plate(side), self.separation(side, a))


def sphere_plate_force(radius: float, free_energy_per_area: float) -> float:
    """F = 2 pi R F_pp(a), in N."""
    if not radius > 0.0:
        raise ConfigurationError("sphere radius must be > 0")
    return 2.0 * math.pi * radius * free_energy_per_area


def sphere_plate_force_gradient(radius: float, pressure: float) -> float:
    """dF/da = -2 pi R P_pp(a), in N/m."""
    if not radius > 0.0:
        raise ConfigurationError("sphere radius must be > 0")
    return -2.0 * math.pi * radius * pressure


def interaction_radius(a: float, radius: float) -> float:
    """Radius sqrt(a R) of the plate patch that dominates the interaction."""
    return math.sqrt(a * radius)


@dataclass
class SweepResult:
    separation: float
    prescription: str
    f_si: float
    f_au: float
    delta_f: float
    fprime_si: float
    fprime_au: float
    delta_f_prime: float
    delta_f_error: float
    delta_f_prime_error: float
    converged: bool = True


def _check_a(a: float, geom: ApparatusGeometry):
    if not a > 0.0:
        raise ConfigurationError(f"separation must be > 0, got {a!r}")


def apparatus_point(a: float, geom: ApparatusGeometry, thermal: ThermalSpec | None = None,
                    quad: QuadratureSpec | None = None) -> SweepResult:
    """Forces, gradients and their differences at one separation."""
    thermal = thermal or ThermalSpec()
    _check_a(a, geom)
    R = geom.sphere_radius
    out = {}
    for side in (SI_SIDE, AU_SIDE):
        res = evaluate(geom.gap(side, a), thermal, quad, (FREE_ENERGY, PRESSURE))
        out[side] = res
    f_si = sphere_plate_force(R, out[SI_SIDE].free_energy)
    f_au = sphere_plate_force(R, out[AU_SIDE].free_energy)
    fp_si = sphere_plate_force_gradient(R, out[SI_SIDE].pressure)
    fp_au = sphere_plate_force_gradient(R, out[AU_SIDE].pressure)
    k = 2.0 * math.pi * R
    return SweepResult(
        separation=a,
        prescription=thermal.prescription,
        f_si=f_si,
        f_au=f_au,
        delta_f=f_si - f_au,
        fprime_si=fp_si,
        fprime_au=fp_au,
        delta_f_prime=fp_si - fp_au,
        delta_f_error=k * (out[SI_SIDE].error(FREE_ENERGY) + out[AU_SIDE].error(FREE_ENERGY)),
        delta_f_prime_error=k * (out[SI_SIDE].error(PRESSURE) + out[AU_SIDE].error(PRESSURE)),
    )


def delta_force(a: float, geom: ApparatusGeometry, thermal: ThermalSpec | None = None,
                quad: QuadratureSpec | None = None) -> float:
    """dF = 2 pi R (F_pp,si - F_pp,au) in N."""
    _check_a(a, geom)
    thermal = thermal or ThermalSpec()
    f = [evaluate(geom.gap(side, a), thermal, quad, (FREE_ENERGY,)).free_energy for side in (SI_SIDE, AU_SIDE)]
    return sphere_plate_force(geom.sphere_radius, f[0]) - sphere_plate_force(geom.sphere_radius, f[1])


def delta_force_gradient(a: float, geom: ApparatusGeometry, thermal: ThermalSpec | None = None,
                         quad: QuadratureSpec | None = None) -> float:
    """dF' = -2 pi R (P_si - P_au) in N/m."""
    _check_a(a, geom)
    thermal = thermal or ThermalSpec()
    p = [evaluate(geom.gap(side, a), thermal, quad, (PRESSURE,)).pressure for side in (SI_SIDE, AU_SIDE)]
    return (sphere_plate_force_gradient(geom.sphere_radius, p[0])
            - sphere_plate_force_gradient(geom.sphere_radius, p[1]))
