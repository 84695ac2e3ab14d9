"""Thermal Casimir forces between layered plates and the split-slab
differential apparatus, via the Lifshitz formula and the proximity force
approximation."""

from .errors import ConfigurationError, ConvergenceError, DomainError
from .lifshitz import (GapConfiguration, LifshitzResult, QuadratureSpec, ThermalSpec, evaluate, free_energy_per_area,
                       matsubara_frequency, pressure, pressure_gradient, thermal_length)
from .materials import (CONDUCTIVE_SILICON, DRUDE, GOLD, PLASMA, SILICON, Composite, Drude, OpticalTable, Oscillator,
                        Plasma, StaticBehavior, Tabulated, Vacuum, eval_permittivity, eval_static_limit,
                        kramers_kronig)
from .pfa import (ApparatusGeometry, SweepResult, apparatus_point, delta_force, delta_force_gradient,
                  sphere_plate_force, sphere_plate_force_gradient)
from .strata import TE, TM, Layer, LayerStack, fresnel, kz, stack_reflection, zero_frequency_te_reflection

__version__ = "0.1.0"
