"""Run configuration: TOML parsing, validation and load-origin handling.

A configuration document looks like::

    [section]
    shape = "ellipse(2, 1)"          # or: harmonics = {x1 = {1 = [2, 0]}, x2 = {1 = [0, 1]}}

    [material]
    E = 1.0
    nu = 0.3
    h = 0.01

    [tube]
    length = 2.0

    [loads]
    force = [0.0, 1.0, 0.0]
    moment = [0.0, 0.0, 1.0]
    origin = "centroid"              # or "user"

    [run]
    mode = "all"                     # exact, thin, circular or all
    psi_variant = "corollary"        # or "flexure-fn"

    [grid]
    n_s = 512
    n_z = 9

    [output]
    dir = "out"
    table_format = "csv"             # or "tsv"

    [gates]
    equilibrium = 1e-6
    resultants = 1e-7
    seams = 1e-8

Every table and key is optional except ``section``, ``material`` and
``loads``.  Unknown tables or keys are rejected.
"""

from __future__ import annotations

import dataclasses
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .circular import PSI_VARIANTS
from .ebt import ResultantLoads
from .errors import InvalidMaterial, ParseError, ValidationError
from .geometry import FourierCurveSpec
from .shell import stiffnesses

MODES = ("exact", "thin", "circular", "all")
ORIGINS = ("centroid", "user")
TABLE_FORMATS = {"csv": ",", "tsv": "\t"}

_SCHEMA = {
    "section": {"shape", "harmonics"},
    "material": {"E", "nu", "h"},
    "tube": {"length"},
    "loads": {"force", "moment", "origin"},
    "run": {"mode", "psi_variant"},
    "grid": {"n_s", "n_z"},
    "output": {"dir", "table_format"},
    "gates": {"equilibrium", "resultants", "seams"},
}
_REQUIRED = ("section", "material", "loads")


@dataclass(frozen=True)
class Gates:
    """Relative residual thresholds applied to the exact solution."""

    equilibrium: float = 1e-6
    resultants: float = 1e-7
    seams: float = 1e-8


@dataclass(frozen=True)
class RunConfig:
    section: FourierCurveSpec
    section_text: str
    E: float
    nu: float
    h: float
    loads: ResultantLoads
    origin: str = "centroid"
    length: float = 1.0
    mode: str = "all"
    psi_variant: str = "corollary"
    n_s: int = 512
    n_z: int = 9
    out_dir: str = "out"
    table_format: str = "csv"
    gates: Gates = field(default_factory=Gates)

    @property
    def material(self):
        return stiffnesses(self.E, self.nu, self.h)

    @property
    def modes(self):
        return ("exact", "thin", "circular") if self.mode == "all" else (self.mode,)

    def with_overrides(self, **changes):
        """Copy with the non-``None`` entries of ``changes`` applied, then revalidated."""
        changes = {k: v for k, v in changes.items() if v is not None}
        return validate(dataclasses.replace(self, **changes))

    def as_dict(self):
        return {
            "section": self.section_text,
            "material": {"E": self.E, "nu": self.nu, "h": self.h},
            "tube_length": self.length,
            "loads": {
                "force": list(self.loads.force),
                "moment": list(self.loads.moment),
                "origin": self.origin,
            },
            "mode": self.mode,
            "psi_variant": self.psi_variant,
            "grid": {"n_s": self.n_s, "n_z": self.n_z},
            "output": {"dir": self.out_dir, "table_format": self.table_format},
            "gates": dataclasses.asdict(self.gates),
        }


def _line_of(text, key):
    pattern = re.compile(rf"^\s*(\[\s*)?[\"']?{re.escape(key)}[\"']?\s*(=|\])", re.MULTILINE)
    m = pattern.search(text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(name, f"{name} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(name, f"{name} must be finite, got {value!r}")
    return value


def _integer(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(name, f"{name} must be an integer, got {value!r}")
    return value


def _vector(value, name):
    if not isinstance(value, list) or len(value) != 3:
        raise ValidationError(name, f"{name} must be a list of three numbers")
    return tuple(_number(v, name) for v in value)


def _choice(value, name, options):
    if value not in options:
        raise ValidationError(name, f"{name} must be one of {', '.join(options)}; got {value!r}")
    return value


def _section(table):
    has_shape, has_harm = "shape" in table, "harmonics" in table
    if has_shape == has_harm:
        raise ValidationError("section", "give exactly one of section.shape or section.harmonics")
    if has_shape:
        text = table["shape"]
        if not isinstance(text, str):
            raise ValidationError("shape", "section.shape must be a string")
        try:
            return FourierCurveSpec.parse(text), text
        except ValueError as exc:
            raise ValidationError("shape", str(exc)) from None
    harm = table["harmonics"]
    if not isinstance(harm, dict) or set(harm) != {"x1", "x2"}:
        raise ValidationError("harmonics", "section.harmonics needs exactly the tables x1 and x2")
    try:
        for coord in ("x1", "x2"):
            for k, pair in harm[coord].items():
                int(k)
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ValueError(f"harmonic {k} of {coord} must be a [cos, sin] pair")
                for v in pair:
                    _number(v, "harmonics")
        spec = FourierCurveSpec.from_harmonics(harm["x1"], harm["x2"])
    except (ValueError, TypeError, AttributeError) as exc:
        raise ValidationError("harmonics", str(exc)) from None
    return spec, "harmonics"


def validate(cfg: RunConfig) -> RunConfig:
    """Check the cross-field invariants of a configuration.

    Raises
    ------
    ValidationError
        With ``field`` naming the offending setting.
    """
    try:
        stiffnesses(cfg.E, cfg.nu, cfg.h)
    except InvalidMaterial as exc:
        raise ValidationError(exc.field, str(exc)) from None
    if not (math.isfinite(cfg.length) and cfg.length > 0.0):
        raise ValidationError("length", f"tube length must be positive, got {cfg.length!r}")
    _choice(cfg.mode, "mode", MODES)
    _choice(cfg.psi_variant, "psi_variant", PSI_VARIANTS)
    _choice(cfg.origin, "origin", ORIGINS)
    _choice(cfg.table_format, "table_format", tuple(TABLE_FORMATS))
    if int(cfg.n_s) != cfg.n_s or cfg.n_s < 64 or cfg.n_s % 2:
        raise ValidationError("n_s", f"n_s must be an even integer >= 64, got {cfg.n_s!r}")
    if int(cfg.n_z) != cfg.n_z or cfg.n_z < 2:
        raise ValidationError("n_z", f"n_z must be an integer >= 2, got {cfg.n_z!r}")
    for name, value in dataclasses.asdict(cfg.gates).items():
        if not value > 0.0:
            raise ValidationError(name, f"gate {name} must be positive, got {value!r}")
    if cfg.mode == "circular" and circle_radius(cfg.section) is None:
        raise ValidationError("mode", "circular mode requires a circle section")
    return cfg


def circle_radius(spec: FourierCurveSpec):
    """Radius when ``spec`` is a circle ``c + R (cos t, sin t)``, else ``None``."""
    if spec.order < 1:
        return None
    R = spec.x1_cos[1]
    rest = list(spec.x1_sin[1:]) + list(spec.x2_cos[1:]) + list(spec.x1_cos[2:]) + list(spec.x2_sin[2:])
    if R > 0.0 and spec.x2_sin[1] == R and not any(rest):
        return float(R)
    return None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML configuration document.

    Raises
    ------
    ParseError
        Malformed TOML, unknown or missing tables and keys.
    ValidationError
        A value is out of range; ``field`` names the setting.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        if line is None:
            m = re.search(r"line (\d+)", str(exc))
            line = int(m.group(1)) if m else None
        raise ParseError(f"malformed configuration: {exc}", line=line) from None
    for name, value in doc.items():
        if name not in _SCHEMA:
            raise ParseError(f"unknown table {name!r}", key=name, line=_line_of(text, name))
        if not isinstance(value, dict):
            raise ParseError(f"{name!r} must be a table", key=name, line=_line_of(text, name))
        for key in value:
            if key not in _SCHEMA[name]:
                raise ParseError(f"unknown key {key!r} in [{name}]", key=f"{name}.{key}", line=_line_of(text, key))
    for name in _REQUIRED:
        if name not in doc:
            raise ParseError(f"missing table [{name}]", key=name)
    for key in ("E", "nu", "h"):
        if key not in doc["material"]:
            raise ParseError(f"missing key {key!r} in [material]", key=f"material.{key}")

    spec, text_form = _section(doc["section"])
    mat = doc["material"]
    loads_t = doc["loads"]
    loads = ResultantLoads(
        _vector(loads_t.get("force", [0.0, 0.0, 0.0]), "force"),
        _vector(loads_t.get("moment", [0.0, 0.0, 0.0]), "moment"),
    )
    run = doc.get("run", {})
    grid = doc.get("grid", {})
    out = doc.get("output", {})
    gates = doc.get("gates", {})
    defaults = RunConfig.__dataclass_fields__
    cfg = RunConfig(
        section=spec,
        section_text=text_form,
        E=_number(mat["E"], "E"),
        nu=_number(mat["nu"], "nu"),
        h=_number(mat["h"], "h"),
        loads=loads,
        origin=loads_t.get("origin", defaults["origin"].default),
        length=_number(doc.get("tube", {}).get("length", defaults["length"].default), "length"),
        mode=run.get("mode", defaults["mode"].default),
        psi_variant=run.get("psi_variant", defaults["psi_variant"].default),
        n_s=_integer(grid.get("n_s", defaults["n_s"].default), "n_s"),
        n_z=_integer(grid.get("n_z", defaults["n_z"].default), "n_z"),
        out_dir=str(out.get("dir", defaults["out_dir"].default)),
        table_format=out.get("table_format", defaults["table_format"].default),
        gates=Gates(**{k: _number(v, k) for k, v in gates.items()}),
    )
    return validate(cfg)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def transform_loads_to_centroid(loads: ResultantLoads, centroid) -> ResultantLoads:
    """Refer a load given about the user origin to the centroid ``c``.

    ``R`` is unchanged and ``M_c = M_user - c x R``.
    """
    c = np.zeros(3)
    c[: len(centroid)] = np.asarray(centroid, dtype=float)
    return ResultantLoads(loads.R, loads.M - np.cross(c, loads.R))


def moment_about_user_origin(moment, force, centroid):
    """Inverse of :func:`transform_loads_to_centroid` for a reported moment."""
    c = np.zeros(3)
    c[: len(centroid)] = np.asarray(centroid, dtype=float)
    return np.asarray(moment, dtype=float) + np.cross(c, np.asarray(force, dtype=float))
