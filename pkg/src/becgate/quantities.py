"""Physical constants and unit-tagged scalars.

Everything downstream works in SI with angular frequencies in rad/s.  The
helpers here exist so that user-facing text ("5.39 nm", "2pi*10 Hz") and
report output go through one conversion table.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

# CODATA 2018 values, fixed at build time.
HBAR = 1.054571817e-34  # J s
ATOMIC_MASS_UNIT = 1.66053906660e-27  # kg
RB87_MASS_U = 86.909180527

TWO_PI = 2.0 * math.pi


class DimensionError(ValueError):
    """Raised when quantities of different dimensions are combined."""

    def __init__(self, left: "Dimension", right: "Dimension", action: str = "combine"):
        super().__init__(f"cannot {action} {left.value} with {right.value}")
        self.left = left
        self.right = right


class UnitError(ValueError):
    pass


@dataclass(frozen=True)
class Constants:
    hbar: float = HBAR
    atom_mass: float = RB87_MASS_U * ATOMIC_MASS_UNIT
    reference_isotope: str = "Rb-87"

    def __post_init__(self):
        if not (self.hbar > 0 and self.atom_mass > 0):
            raise ValueError("hbar and atom_mass must be positive")


RB87 = Constants()


class Dimension(str, Enum):
    LENGTH = "length"
    ANGULAR_FREQUENCY = "angular frequency"
    TIME = "time"
    ENERGY = "energy"
    DENSITY = "density"
    INTERACTION = "interaction strength"
    DIMENSIONLESS = "dimensionless"


D = Dimension

# label -> (dimension, SI value of one unit)
UNITS: dict[str, tuple[Dimension, float]] = {
    "m": (D.LENGTH, 1.0),
    "cm": (D.LENGTH, 1e-2),
    "mm": (D.LENGTH, 1e-3),
    "um": (D.LENGTH, 1e-6),
    "μm": (D.LENGTH, 1e-6),
    "µm": (D.LENGTH, 1e-6),
    "nm": (D.LENGTH, 1e-9),
    "a0": (D.LENGTH, 5.29177210903e-11),
    "rad/s": (D.ANGULAR_FREQUENCY, 1.0),
    "Hz": (D.ANGULAR_FREQUENCY, TWO_PI),
    "kHz": (D.ANGULAR_FREQUENCY, TWO_PI * 1e3),
    "s": (D.TIME, 1.0),
    "ms": (D.TIME, 1e-3),
    "us": (D.TIME, 1e-6),
    "μs": (D.TIME, 1e-6),
    "min": (D.TIME, 60.0),
    "J": (D.ENERGY, 1.0),
    "h*Hz": (D.ENERGY, TWO_PI * HBAR),
    "m^-3": (D.DENSITY, 1.0),
    "cm^-3": (D.DENSITY, 1e6),
    "J*m^3": (D.INTERACTION, 1.0),
    "1": (D.DIMENSIONLESS, 1.0),
    "rad": (D.DIMENSIONLESS, 1.0),
}

SI_UNIT = {
    D.LENGTH: "m",
    D.ANGULAR_FREQUENCY: "rad/s",
    D.TIME: "s",
    D.ENERGY: "J",
    D.DENSITY: "m^-3",
    D.INTERACTION: "J*m^3",
    D.DIMENSIONLESS: "1",
}


def _lookup(unit: str) -> tuple[Dimension, float]:
    try:
        return UNITS[unit]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}; known: {', '.join(UNITS)}") from None


def _scale(value: float, factor: float) -> float:
    # 5.24 * 1e-9 is one ulp off 5.24e-9; dividing by an exact integer is not
    inv = round(1.0 / factor)
    if factor < 1.0 and 1.0 / inv == factor:
        return value / inv
    return value * factor


@dataclass(frozen=True)
class Quantity:
    """A real number expressed in a named unit.

    ``Hz`` is ordinary frequency; its SI value is the angular frequency, so
    ``Quantity(10, "Hz").si == 2*pi*10``.
    """

    value: float
    unit: str

    def __post_init__(self):
        _lookup(self.unit)

    @property
    def dimension(self) -> Dimension:
        return _lookup(self.unit)[0]

    @property
    def si(self) -> float:
        return _scale(self.value, _lookup(self.unit)[1])

    def to(self, unit: str) -> float:
        return convert(self, unit).value

    def _check(self, other: "Quantity", action: str) -> None:
        if not isinstance(other, Quantity):
            raise TypeError(f"cannot {action} Quantity and {type(other).__name__}")
        if other.dimension is not self.dimension:
            raise DimensionError(self.dimension, other.dimension, action)

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check(other, "add")
        return Quantity(self.value + other.to(self.unit), self.unit)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check(other, "subtract")
        return Quantity(self.value - other.to(self.unit), self.unit)

    def __mul__(self, k: float) -> "Quantity":
        if isinstance(k, Quantity):
            return NotImplemented
        return Quantity(self.value * k, self.unit)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Quantity":
        if isinstance(k, Quantity):
            return NotImplemented
        return Quantity(self.value / k, self.unit)

    def __neg__(self) -> "Quantity":
        return Quantity(-self.value, self.unit)

    def __lt__(self, other: "Quantity") -> bool:
        self._check(other, "compare")
        return self.si < other.si

    def __le__(self, other: "Quantity") -> bool:
        self._check(other, "compare")
        return self.si <= other.si

    def __str__(self) -> str:
        return f"{self.value:g} {self.unit}"


def convert(q: Quantity, unit: str) -> Quantity:
    dim, scale = _lookup(unit)
    if dim is not q.dimension:
        raise DimensionError(q.dimension, dim, "convert")
    if unit == q.unit:
        return q
    return Quantity(q.si / scale, unit)


_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QTY_RE = re.compile(
    rf"^\s*(?P<twopi>(?:2\s*\*?\s*(?:pi|π)|2π)\s*[*·×]\s*)?(?P<num>{_NUMBER})\s*(?P<unit>\S*)\s*$"
)


def parse_quantity(text: str, default_unit: str | None = None) -> Quantity:
    """Parse ``"5.39 nm"``, ``"0.14s"`` or ``"2pi*10 Hz"``.

    The ``2pi*`` prefix is notation only and is allowed with Hz/kHz, where
    ``2pi*10 Hz`` and ``10 Hz`` denote the same angular frequency.
    """
    m = _QTY_RE.match(text)
    if m is None:
        raise UnitError(f"cannot parse quantity {text!r}")
    unit = m["unit"] or default_unit
    if not unit:
        raise UnitError(f"missing unit in {text!r}")
    if m["twopi"] and unit not in ("Hz", "kHz"):
        raise UnitError(f"2pi prefix only allowed with Hz or kHz, got {text!r}")
    return Quantity(float(m["num"]), unit)


def parse_si(text: str, dimension: Dimension, default_unit: str | None = None) -> float:
    q = parse_quantity(text, default_unit)
    if q.dimension is not dimension:
        raise DimensionError(q.dimension, dimension, "use")
    return q.si


_PHASE_RE = re.compile(rf"^\s*(?P<k>{_NUMBER})?\s*\*?\s*(?:pi|π)\s*(?:/\s*(?P<d>{_NUMBER}))?\s*$")


def parse_phase(text: str) -> float:
    """Phase in radians from ``"pi"``, ``"2pi"``, ``"pi/2"`` or a bare number."""
    m = _PHASE_RE.match(text)
    if m:
        k = float(m["k"]) if m["k"] else 1.0
        d = float(m["d"]) if m["d"] else 1.0
        return k * math.pi / d
    try:
        return float(text.strip().removesuffix("rad"))
    except ValueError:
        raise UnitError(f"cannot parse phase {text!r}") from None


def hz(omega: float) -> float:
    """Angular frequency in rad/s -> ordinary frequency in Hz."""
    return omega / TWO_PI


def angular(f_hz: float) -> float:
    return TWO_PI * f_hz
