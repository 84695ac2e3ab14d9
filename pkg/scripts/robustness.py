"""Sensitivity of dF to a surface step and an over-layer thickness mismatch.

Prints the relative change of dF at each separation for step heights and
thickness mismatches of either sign, applied to either side.
"""

import argparse
from dataclasses import dataclass, field, replace

from casimir_diff.lifshitz import ThermalSpec
from casimir_diff.materials import DRUDE, PLASMA
from casimir_diff.pfa import ApparatusGeometry, apparatus_point


@dataclass
class Experiment:
    separations: list = field(default_factory=lambda: [2e-6, 3e-6, 4e-6])
    perturbation: float = 20e-9


def variants(g: ApparatusGeometry, d: float):
    w = g.overlayer_thickness_au_side
    return {
        "step on si side": replace(g, step_height=d, step_side="si"),
        "step on au side": replace(g, step_height=d, step_side="au"),
        "si over-layer +d": replace(g, overlayer_thickness_si_side=w + d),
        "si over-layer -d": replace(g, overlayer_thickness_si_side=w - d),
    }


def run(exp: Experiment):
    g = ApparatusGeometry()
    print(f"{'a_um':>5} {'prescription':>12} {'variant':>18} {'dF_fN':>11} {'F_si shift_fN':>14} {'rel_change':>10}")
    for a in exp.separations:
        for presc in (DRUDE, PLASMA):
            th = ThermalSpec(prescription=presc)
            base = apparatus_point(a, g, th)
            for name, geom in variants(g, exp.perturbation).items():
                r = apparatus_point(a, geom, th)
                shift = (r.f_si - base.f_si) * 1e15
                change = (r.delta_f - base.delta_f) / abs(base.delta_f)
                print(f"{a * 1e6:5.1f} {presc:>12} {name:>18} {r.delta_f * 1e15:11.4g} {shift:14.4g} {change:10.1%}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--separations", type=float, nargs="+", default=Experiment().separations)
    p.add_argument("--perturbation", type=float, default=Experiment.perturbation)
    run(Experiment(**vars(p.parse_args())))
