"""Block data of symplectic normal-form decompositions and geodesic models.

A decomposition records how the linearized return map splits into basic
blocks: eigenvalue-one blocks (``p_minus``/``p_zero``/``p_plus``),
eigenvalue-minus-one blocks (``q_minus``/``q_zero``/``q_plus``),
plane rotations with angles ``thetas`` (stored pre-divided by 2*pi, so
every angle lives in (0,1) and the excluded half-turn is 1/2),
non-trivial and trivial 4x4 rotation blocks with angles ``alphas`` and
``betas``, and ``h`` hyperbolic blocks.  ``r_prime`` counts how many
thetas exceed 1/2; the angle list must be ordered so exactly its first
``r_prime`` entries do.

A :class:`GeodesicModel` wraps a decomposition with the data of a
hypothetical closed geodesic: initial index and nullity, manifold
dimension, orientability, sparse local type numbers attached to odd
iterates, and (optionally) a declared analytical period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from .errors import ParseError, PeriodMismatchError
from .exactnum import HALF, ExactReal, as_exact, parse_exact

__all__ = [
    "NormalFormDecomposition",
    "GeodesicModel",
    "splitting_consistency",
    "analytical_period",
    "effective_period",
]

_NF_KEYS = (
    "p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus",
    "h", "r_prime", "half_dim",
)
_ANGLE_KEYS = ("thetas", "alphas", "betas")


def _angles(values) -> tuple[ExactReal, ...]:
    return tuple(as_exact(v) for v in values)


@dataclass(frozen=True)
class NormalFormDecomposition:
    p_minus: int = 0
    p_zero: int = 0
    p_plus: int = 0
    q_minus: int = 0
    q_zero: int = 0
    q_plus: int = 0
    h: int = 0
    r_prime: int = 0
    thetas: tuple[ExactReal, ...] = ()
    alphas: tuple[ExactReal, ...] = ()
    betas: tuple[ExactReal, ...] = ()
    half_dim: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "thetas", _angles(self.thetas))
        object.__setattr__(self, "alphas", _angles(self.alphas))
        object.__setattr__(self, "betas", _angles(self.betas))

    @property
    def r(self) -> int:
        return len(self.thetas)

    @property
    def r_star(self) -> int:
        return len(self.alphas)

    @property
    def r_zero(self) -> int:
        return len(self.betas)

    def block_total(self) -> int:
        return (
            self.p_minus + self.p_zero + self.p_plus
            + self.q_minus + self.q_zero + self.q_plus
            + self.r + self.h + 2 * (self.r_star + self.r_zero)
        )

    def eigenvalue_one_count(self) -> int:
        """Kernel dimension of (P - I): p_minus + 2*p_zero + p_plus."""
        return self.p_minus + 2 * self.p_zero + self.p_plus

    def eigenvalue_minus_one_count(self) -> int:
        """Kernel dimension of (P + I): q_minus + 2*q_zero + q_plus."""
        return self.q_minus + 2 * self.q_zero + self.q_plus

    def rational_angle_denominators(self) -> tuple[int, ...]:
        return tuple(
            a.as_fraction().denominator
            for a in self.thetas + self.alphas + self.betas
            if a.is_rational
        )

    def validate(self) -> list[str]:
        """Return all invariant violations (empty list means valid)."""
        problems: list[str] = []
        for key in _NF_KEYS:
            if getattr(self, key) < 0:
                problems.append(f"{key} must be non-negative")
        if self.block_total() != self.half_dim:
            problems.append(
                f"block counts total {self.block_total()} but half_dim is {self.half_dim}"
            )
        if self.r_prime > self.r:
            problems.append("r_prime exceeds the number of thetas")
        for name, angles in (("theta", self.thetas), ("alpha", self.alphas), ("beta", self.betas)):
            for j, a in enumerate(angles):
                if not (0 < a < 1):
                    problems.append(f"{name}[{j}] = {a} is outside (0, 1)")
                elif a == HALF:
                    problems.append(f"{name}[{j}] equals 1/2")
        for j, a in enumerate(self.thetas):
            if 0 < a < 1 and a != HALF:
                above = a > HALF
                if above != (j < self.r_prime):
                    problems.append(
                        f"theta[{j}] = {a} breaks the ordering convention for r_prime = {self.r_prime}"
                    )
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def to_json_dict(self) -> dict:
        out: dict = {key: getattr(self, key) for key in _NF_KEYS}
        for key in _ANGLE_KEYS:
            out[key] = [str(a) for a in getattr(self, key)]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "NormalFormDecomposition":
        if not isinstance(data, dict):
            raise ParseError("normal form must be a JSON object")
        unknown = set(data) - set(_NF_KEYS) - set(_ANGLE_KEYS)
        if unknown:
            raise ParseError(f"unknown normal-form keys: {sorted(unknown)}")
        kwargs: dict = {}
        for key in _NF_KEYS:
            value = data.get(key, 0)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParseError(f"normal-form field {key!r} must be an integer")
            kwargs[key] = value
        for key in _ANGLE_KEYS:
            raw = data.get(key, [])
            if not isinstance(raw, list):
                raise ParseError(f"normal-form field {key!r} must be a list of strings")
            kwargs[key] = tuple(parse_exact(s) for s in raw)
        return cls(**kwargs)


@dataclass(frozen=True)
class GeodesicModel:
    nf: NormalFormDecomposition
    ind1: int
    null1: int
    dim: int
    orientable: bool
    type_numbers: tuple[tuple[int, int, int], ...] = ()
    period: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "type_numbers", tuple(tuple(entry) for entry in self.type_numbers)
        )

    @cached_property
    def _type_map(self) -> dict[tuple[int, int], int]:
        table: dict[tuple[int, int], int] = {}
        for m, degree, k in self.type_numbers:
            table[(m, degree)] = table.get((m, degree), 0) + k
        return table

    def type_number(self, m: int, degree: int) -> int:
        """k_degree at the m-th iterate (absent entries are zero)."""
        return self._type_map.get((m, degree), 0)

    @property
    def is_bumpy(self) -> bool:
        """No iterate is degenerate: no eigenvalue +-1 blocks, no
        rational rotation angles, zero initial nullity."""
        nf = self.nf
        return (
            self.null1 == 0
            and nf.eigenvalue_one_count() == 0
            and nf.eigenvalue_minus_one_count() == 0
            and not nf.rational_angle_denominators()
        )

    def expected_null1(self) -> int:
        """Initial nullity dictated by the block counts."""
        if self.orientable:
            return self.nf.eigenvalue_one_count()
        extra = 1 if self.dim % 2 == 1 else 0
        return self.nf.eigenvalue_minus_one_count() - extra

    def validate(self) -> list[str]:
        problems = [f"nf: {msg}" for msg in self.nf.validate()]
        if self.dim < 2:
            problems.append("dim must be at least 2")
        if self.nf.half_dim != self.dim - 1:
            problems.append(
                f"half_dim {self.nf.half_dim} does not match dim {self.dim} (expected dim - 1)"
            )
        if self.null1 < 0:
            problems.append("null1 must be non-negative")
        elif self.null1 != self.expected_null1():
            problems.append(
                f"null1 = {self.null1} inconsistent with block counts"
                f" (expected {self.expected_null1()})"
            )
        period = self.period if self.period is not None else analytical_period(self)
        if self.period is not None:
            if self.period <= 0 or self.period % 2:
                problems.append("declared period must be a positive even integer")
            elif self.period != analytical_period(self):
                problems.append(
                    f"declared period {self.period} != computed analytical period"
                    f" {analytical_period(self)}"
                )
        for m, degree, k in self.type_numbers:
            if k < 0:
                problems.append(f"type number k_{degree}(c^{m}) is negative")
            if m % 2 == 0 or not (1 <= m <= max(period - 1, 1)):
                problems.append(
                    f"type-number iterate {m} is not an odd iterate below the period {period}"
                )
            if not (0 <= degree <= 2 * self.dim - 2):
                problems.append(f"type-number degree {degree} outside [0, {2 * self.dim - 2}]")
        if self.is_bumpy and self.type_numbers:
            if self._type_map != {(1, 0): 1}:
                problems.append("bumpy models must concentrate type numbers at k_0(c) = 1")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def to_json_dict(self) -> dict:
        out = {
            "nf": self.nf.to_json_dict(),
            "ind1": self.ind1,
            "null1": self.null1,
            "dim": self.dim,
            "orientable": self.orientable,
            "type_numbers": [list(entry) for entry in self.type_numbers],
        }
        if self.period is not None:
            out["period"] = self.period
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "GeodesicModel":
        if not isinstance(data, dict):
            raise ParseError("geodesic model must be a JSON object")
        required = {"nf", "ind1", "null1", "dim", "orientable"}
        allowed = required | {"type_numbers", "period"}
        unknown = set(data) - allowed
        if unknown:
            raise ParseError(f"unknown model keys: {sorted(unknown)}")
        missing = required - set(data)
        if missing:
            raise ParseError(f"missing model keys: {sorted(missing)}")
        nf = NormalFormDecomposition.from_json_dict(data["nf"])
        for key in ("ind1", "null1", "dim"):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise ParseError(f"model field {key!r} must be an integer")
        if not isinstance(data["orientable"], bool):
            raise ParseError("model field 'orientable' must be a boolean")
        raw_tn = data.get("type_numbers", [])
        if not isinstance(raw_tn, list):
            raise ParseError("type_numbers must be a list of [m, l, k] triples")
        type_numbers = []
        for entry in raw_tn:
            if (
                not isinstance(entry, list)
                or len(entry) != 3
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
            ):
                raise ParseError(f"bad type_numbers entry {entry!r}")
            type_numbers.append(tuple(entry))
        period = data.get("period")
        if period is not None and (not isinstance(period, int) or isinstance(period, bool)):
            raise ParseError("model field 'period' must be an integer")
        return cls(
            nf=nf,
            ind1=data["ind1"],
            null1=data["null1"],
            dim=data["dim"],
            orientable=data["orientable"],
            type_numbers=tuple(type_numbers),
            period=period,
        )

    def with_type_numbers(self, entries) -> "GeodesicModel":
        return replace(self, type_numbers=tuple(tuple(e) for e in entries))


def splitting_consistency(nf: NormalFormDecomposition, i1: int, i_minus1: int) -> bool:
    """Truth of i1 = i_minus1 + (q_zero+q_plus) + (r - 2*r_prime) - (p_zero+p_minus)."""
    return i1 == i_minus1 + (nf.q_zero + nf.q_plus) + (nf.r - 2 * nf.r_prime) - (
        nf.p_zero + nf.p_minus
    )


def analytical_period(model: GeodesicModel) -> int:
    """Smallest even iterate at which the nullity reaches its maximum.

    The nullity is maximal exactly at even multiples of every rational
    angle's denominator, so the period is lcm(2, denominators); models
    without rational angles have period 2.
    """
    denominators = model.nf.rational_angle_denominators()
    return math.lcm(2, *denominators)


def effective_period(model: GeodesicModel) -> int:
    """Declared period when present (cross-checked), else the computed one."""
    computed = analytical_period(model)
    if model.period is not None and model.period != computed:
        raise PeriodMismatchError(
            f"declared period {model.period} != computed analytical period {computed}"
        )
    return computed
