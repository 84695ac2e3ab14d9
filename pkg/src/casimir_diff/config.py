"""Run configuration: INI-style ``key = value`` text with named sections.

Every key is optional; an empty file runs the default apparatus
(R = 150 um, w = 100 nm, T = 300 K, a from 1 to 6 um in 26 points).
Lengths are in metres and frequencies in rad/s unless the key ends in
``_ev``. Relative paths are resolved against the config file.

Sections and keys::

    [geometry]
    sphere_radius = 150e-6
    overlayer_thickness = 100e-9            ; sets both sides
    overlayer_thickness_si_side = 100e-9
    overlayer_thickness_au_side = 100e-9
    step_height = 0                         ; m
    step_side = si                          ; si | au
    sphere_coating = au                     ; material names
    substrate_si = si
    substrate_au = au
    overlayer = si_c

    [thermal]
    temperature = 300
    matsubara_rel_tol = 1e-10
    matsubara_min_terms = 10
    matsubara_max_terms = 100000

    [quadrature]
    rel_tol = 1e-9
    abs_tol = 0
    max_subdivisions = 2000

    [sweep]
    a_min = 1e-6
    a_max = 6e-6
    points = 26
    spacing = linear                        ; linear | log

    [output]
    path =                                  ; CSV destination, stdout if empty

    [material.NAME]
    model = drude | plasma | oscillator | vacuum | tabulated | composite
    ; drude:      plasma_frequency[_ev], relaxation_frequency[_ev]
    ; plasma:     plasma_frequency[_ev]
    ; oscillator: eps_static, eps_infinity, resonance_frequency[_ev]
    ; tabulated:  table (CSV path), low_drude_plasma_frequency[_ev],
    ;             low_drude_relaxation_frequency[_ev], high_exponent = 3
    ; composite:  base, addition (material names)

Built-in materials ``vacuum``, ``au``, ``si`` and ``si_c`` may be
redefined by a ``[material.NAME]`` section of the same name.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constants import ev_to_rad_s
from .errors import ConfigurationError
from .lifshitz import QuadratureSpec, ThermalSpec
from .materials import (DEFAULT_MATERIALS, Composite, DispersionModel, Drude, OpticalTable, Oscillator, Plasma,
                        Tabulated, Vacuum)
from .pfa import ApparatusGeometry

_KEYS = {
    "geometry": {"sphere_radius", "overlayer_thickness", "overlayer_thickness_si_side",
                 "overlayer_thickness_au_side", "step_height", "step_side", "sphere_coating", "substrate_si",
                 "substrate_au", "overlayer"},
    "thermal": {"temperature", "matsubara_rel_tol", "matsubara_min_terms", "matsubara_max_terms"},
    "quadrature": {"rel_tol", "abs_tol", "max_subdivisions"},
    "sweep": {"a_min", "a_max", "points", "spacing"},
    "output": {"path"},
}
_MATERIAL_KEYS = {
    "vacuum": set(),
    "drude": {"plasma_frequency", "relaxation_frequency"},
    "plasma": {"plasma_frequency"},
    "oscillator": {"eps_static", "eps_infinity", "resonance_frequency"},
    "tabulated": {"table", "low_drude_plasma_frequency", "low_drude_relaxation_frequency", "high_exponent"},
    "composite": {"base", "addition"},
}
_FREQUENCY_KEYS = {"plasma_frequency", "relaxation_frequency", "resonance_frequency", "low_drude_plasma_frequency",
                   "low_drude_relaxation_frequency"}


@dataclass(frozen=True)
class SweepSpec:
    a_min: float = 1e-6
    a_max: float = 6e-6
    points: int = 26
    spacing: str = "linear"

    def __post_init__(self):
        if not self.a_min > 0.0:
            raise ConfigurationError("a_min must be > 0")
        if not self.a_max > self.a_min:
            raise ConfigurationError("a_max must exceed a_min")
        if self.points < 2:
            raise ConfigurationError("points must be >= 2")
        if self.spacing not in ("linear", "log"):
            raise ConfigurationError("spacing must be 'linear' or 'log'")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            g = np.geomspace(self.a_min, self.a_max, self.points)
        else:
            g = np.linspace(self.a_min, self.a_max, self.points)
        g[0], g[-1] = self.a_min, self.a_max
        return g


@dataclass
class RunConfig:
    geometry: ApparatusGeometry = field(default_factory=ApparatusGeometry)
    thermal: ThermalSpec = field(default_factory=ThermalSpec)
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    sweep: SweepSpec = field(default_factory=SweepSpec)
    materials: dict[str, DispersionModel] = field(default_factory=lambda: dict(DEFAULT_MATERIALS))
    output: Path | None = None


class _Locator:
    """Maps (section, key) to a line number for diagnostics."""

    def __init__(self, text: str):
        self.lines = {}
        section = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip()
                self.lines[(section, None)] = lineno
            elif section and ("=" in line or ":" in line) and not line.startswith((";", "#")):
                key = line.replace(":", "=", 1).split("=", 1)[0].strip().lower()
                self.lines[(section, key)] = lineno

    def where(self, section, key=None) -> str:
        lineno = self.lines.get((section, key)) or self.lines.get((section, None))
        loc = f"[{section}]" + (f" {key}" if key else "")
        return f"line {lineno}: {loc}" if lineno else loc


class _Reader:
    def __init__(self, parser, locator, source):
        self.parser = parser
        self.loc = locator
        self.source = source

    def fail(self, section, key, message):
        raise ConfigurationError(f"{self.source}: {self.loc.where(section, key)}: {message}")

    def raw(self, section, key):
        if not self.parser.has_option(section, key):
            return None
        value = self.parser.get(section, key).strip()
        return value or None

    def number(self, section, key, kind=float, positive=False):
        text = self.raw(section, key)
        if text is None:
            return None
        try:
            value = kind(text)
        except ValueError:
            self.fail(section, key, f"expected {kind.__name__}, got {text!r}")
        if positive and not value > 0:
            self.fail(section, key, f"must be > 0, got {text!r}")
        return value

    def frequency(self, section, key):
        hz = self.number(section, key, positive=True)
        ev = self.number(section, key + "_ev", positive=True)
        if hz is not None and ev is not None:
            self.fail(section, key, f"give either {key} or {key}_ev, not both")
        return ev_to_rad_s(ev) if ev is not None else hz


def _build(reader, section, fields, factory):
    try:
        return factory(**{k: v for k, v in fields.items() if v is not None})
    except ConfigurationError as exc:
        reader.fail(section, None, str(exc))


def _material(reader, section, raw_models, built, name, stack, base_dir):
    if name in built:
        return built[name]
    if name in stack:
        reader.fail(section, None, f"circular composite material reference via {name!r}")
    if name not in raw_models:
        if name in DEFAULT_MATERIALS:
            return DEFAULT_MATERIALS[name]
        reader.fail(section, None, f"unknown material {name!r}")
    msec = f"material.{name}"
    p = reader.parser
    model = (reader.raw(msec, "model") or "").lower()
    if model not in _MATERIAL_KEYS:
        reader.fail(msec, "model", f"unknown model {model!r}; expected one of {sorted(_MATERIAL_KEYS)}")
    allowed = {"model"} | _MATERIAL_KEYS[model] | {k + "_ev" for k in _MATERIAL_KEYS[model] & _FREQUENCY_KEYS}
    for key in p.options(msec):
        if key not in allowed:
            reader.fail(msec, key, f"unknown key for model {model!r}")

    def need(key, value):
        if value is None:
            reader.fail(msec, key, "required")
        return value

    try:
        if model == "vacuum":
            out = Vacuum()
        elif model == "drude":
            out = Drude(need("plasma_frequency", reader.frequency(msec, "plasma_frequency")),
                        need("relaxation_frequency", reader.frequency(msec, "relaxation_frequency")))
        elif model == "plasma":
            out = Plasma(need("plasma_frequency", reader.frequency(msec, "plasma_frequency")))
        elif model == "oscillator":
            out = Oscillator(need("eps_static", reader.number(msec, "eps_static")),
                             need("eps_infinity", reader.number(msec, "eps_infinity")),
                             need("resonance_frequency", reader.frequency(msec, "resonance_frequency")))
        elif model == "tabulated":
            path = Path(need("table", reader.raw(msec, "table")))
            if not path.is_absolute():
                path = base_dir / path
            wp = reader.frequency(msec, "low_drude_plasma_frequency")
            gamma = reader.frequency(msec, "low_drude_relaxation_frequency")
            if (wp is None) != (gamma is None):
                reader.fail(msec, "low_drude_plasma_frequency", "low-frequency Drude tail needs both parameters")
            exponent = reader.number(msec, "high_exponent")
            table = OpticalTable.from_csv(path, low_drude=(wp, gamma) if wp is not None else None,
                                          high_exponent=3.0 if exponent is None else exponent)
            out = Tabulated(table)
        else:
            chain = stack | {name}
            base = _material(reader, msec, raw_models, built, need("base", reader.raw(msec, "base")), chain,
                             base_dir)
            add = _material(reader, msec, raw_models, built, need("addition", reader.raw(msec, "addition")), chain,
                            base_dir)
            out = Composite(base, add)
    except ConfigurationError as exc:
        if str(exc).startswith(reader.source):
            raise
        reader.fail(msec, None, str(exc))
    built[name] = out
    return out


def parse_config(text: str, source: str = "<config>", base_dir: Path | None = None) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigurationError(f"{source}: {exc}") from exc
    reader = _Reader(parser, _Locator(text), source)
    base_dir = base_dir or Path.cwd()

    raw_models = set()
    for section in parser.sections():
        if section.startswith("material."):
            name = section[len("material."):].strip()
            if not name:
                reader.fail(section, None, "empty material name")
            raw_models.add(name)
        elif section not in _KEYS:
            reader.fail(section, None, "unknown section")
        else:
            for key in parser.options(section):
                if key not in _KEYS[section]:
                    reader.fail(section, key, "unknown key")

    built: dict[str, DispersionModel] = {}
    materials = dict(DEFAULT_MATERIALS)
    for name in sorted(raw_models):
        materials[name] = _material(reader, f"material.{name}", raw_models, built, name, set(), base_dir)

    def pick(key, default):
        name = reader.raw("geometry", key) or default
        if name not in materials:
            reader.fail("geometry", key, f"unknown material {name!r}")
        return materials[name]

    g = "geometry"
    both = reader.number(g, "overlayer_thickness", positive=True)
    geometry = _build(reader, g, {
        "sphere_radius": reader.number(g, "sphere_radius", positive=True),
        "overlayer_thickness_si_side": reader.number(g, "overlayer_thickness_si_side", positive=True) or both,
        "overlayer_thickness_au_side": reader.number(g, "overlayer_thickness_au_side", positive=True) or both,
        "step_height": reader.number(g, "step_height"),
        "step_side": (reader.raw(g, "step_side") or "si").lower(),
        "sphere_coating": pick("sphere_coating", "au"),
        "substrate_si": pick("substrate_si", "si"),
        "substrate_au": pick("substrate_au", "au"),
        "overlayer_material": pick("overlayer", "si_c"),
    }, ApparatusGeometry)
    thermal = _build(reader, "thermal", {
        "temperature": reader.number("thermal", "temperature"),
        "matsubara_rel_tol": reader.number("thermal", "matsubara_rel_tol"),
        "matsubara_min_terms": reader.number("thermal", "matsubara_min_terms", int),
        "matsubara_max_terms": reader.number("thermal", "matsubara_max_terms", int),
    }, ThermalSpec)
    quadrature = _build(reader, "quadrature", {
        "rel_tol": reader.number("quadrature", "rel_tol"),
        "abs_tol": reader.number("quadrature", "abs_tol"),
        "max_subdivisions": reader.number("quadrature", "max_subdivisions", int),
    }, QuadratureSpec)
    sweep = _build(reader, "sweep", {
        "a_min": reader.number("sweep", "a_min"),
        "a_max": reader.number("sweep", "a_max"),
        "points": reader.number("sweep", "points", int),
        "spacing": (reader.raw("sweep", "spacing") or "linear").lower(),
    }, SweepSpec)
    out = reader.raw("output", "path")
    output = None
    if out is not None:
        output = Path(out) if Path(out).is_absolute() else base_dir / out
    return RunConfig(geometry, thermal, quadrature, sweep, materials, output)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=str(path), base_dir=path.parent)
