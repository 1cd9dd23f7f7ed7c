"""Integer-coefficient systems over irrational generators and their
difference-number calculus.

A system is a k x r integer matrix P plus rational offsets xi in [0,1),
encoding equations value_j = sum_l P[j][l]*generator_l + xi_j.  All
computations here are purely rational: the generators never get values.

For rank-1 systems the central quantity is the effective difference
number: the maximum over rational eta of |k0+ - k0-|, where k0+/k0-
count equations whose offset is driven to zero by the eta-action
(offset_j -> {offset_j - p_j*eta}) split by coefficient sign.  Only
finitely many eta can zero any offset at all, so the maximum is
realized on the candidate set {(xi_j + t)/p_j mod 1}; a dense-grid
oracle cross-checks that finiteness argument in the tests.

The reduction pipeline alternates zeroing-eta actions with expanding
a zero-offset equation of coefficient p into |p| unit-coefficient
equations with offsets t/|p|, then removes opposite unit pairs whose
offsets sum to an integer; every step preserves the effective
difference number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConditionError, ParseError, ValidationError

__all__ = [
    "IrrationalSystem",
    "EtaClassification",
    "EdnResult",
    "conditions_report",
    "classify",
    "eta_action",
    "candidate_etas",
    "effective_difference_number",
    "dense_eta_grid_max",
    "expand_equation",
    "cutoff_pairs",
    "ReductionStep",
    "ReductionResult",
    "reduce_system",
    "matrix_rank",
    "NormalizedRepresentation",
    "normalize_representation",
    "CollapseResult",
    "collapse_rank",
]

HALF = Fraction(1, 2)


def _mod1(value: Fraction) -> Fraction:
    return value - math.floor(value)


@dataclass(frozen=True)
class IrrationalSystem:
    """k equations over r generators: integer matrix ``p`` (k rows) and
    offsets ``xi`` in [0, 1)."""

    p: tuple[tuple[int, ...], ...]
    xi: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.p)
        offsets = tuple(Fraction(x) for x in self.xi)
        if len(rows) != len(offsets):
            raise ValidationError("coefficient rows and offsets disagree in length")
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValidationError("coefficient rows have unequal lengths")
        for j, x in enumerate(offsets):
            if not 0 <= x < 1:
                raise ValidationError(f"offset xi[{j}] = {x} outside [0, 1)")
        object.__setattr__(self, "p", rows)
        object.__setattr__(self, "xi", offsets)

    @classmethod
    def rank_one(cls, p, xi) -> "IrrationalSystem":
        return cls(tuple((int(v),) for v in p), tuple(Fraction(x) for x in xi))

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def r(self) -> int:
        return len(self.p[0]) if self.p else 0

    @property
    def p_vector(self) -> tuple[int, ...]:
        self._require_rank_one_shape()
        return tuple(row[0] for row in self.p)

    def _require_rank_one_shape(self) -> None:
        if self.k and self.r != 1:
            raise ValidationError(f"operation needs a single-generator system, got r = {self.r}")

    def offset_sum_fraction(self) -> Fraction:
        return _mod1(sum(self.xi, Fraction(0)))

    def equations(self) -> tuple[tuple[int, Fraction], ...]:
        self._require_rank_one_shape()
        return tuple((row[0], x) for row, x in zip(self.p, self.xi))

    def to_json_dict(self) -> dict:
        return {
            "P": [list(row) for row in self.p],
            "xi": [f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator) for x in self.xi],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "IrrationalSystem":
        if not isinstance(data, dict):
            raise ParseError("system must be a JSON object")
        unknown = set(data) - {"P", "xi"}
        if unknown:
            raise ParseError(f"unknown system keys: {sorted(unknown)}")
        if "P" not in data or "xi" not in data:
            raise ParseError("system needs keys 'P' and 'xi'")
        raw_p = data["P"]
        if not isinstance(raw_p, list) or not all(isinstance(row, list) for row in raw_p):
            raise ParseError("'P' must be a list of integer rows")
        for row in raw_p:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ParseError("'P' entries must be integers")
        raw_xi = data["xi"]
        if not isinstance(raw_xi, list):
            raise ParseError("'xi' must be a list of rational strings")
        try:
            xi = tuple(Fraction(s) for s in raw_xi)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"bad offset in {raw_xi!r}") from exc
        try:
            return cls(tuple(tuple(row) for row in raw_p), xi)
        except ValidationError as exc:
            raise ParseError(str(exc)) from exc


def conditions_report(sys: IrrationalSystem) -> list[str]:
    """Violations of the coefficient-sum and offset-sum conditions."""
    problems = []
    for col in range(sys.r):
        total = sum(row[col] for row in sys.p)
        if total != 0:
            problems.append(f"column {col} coefficients sum to {total}, not 0")
    if sys.r == 1:
        for j, row in enumerate(sys.p):
            if row[0] == 0:
                problems.append(f"p[{j}] is zero")
    s = sys.offset_sum_fraction()
    if s == 0 or s == HALF:
        problems.append(f"offset sum is {s} mod 1, excluded by the offset-sum condition")
    return problems


def _require_conditions(sys: IrrationalSystem) -> None:
    problems = conditions_report(sys)
    if problems:
        raise ConditionError("; ".join(problems))


@dataclass(frozen=True)
class EtaClassification:
    eta: Fraction
    k0_plus: tuple[int, ...]
    k0_minus: tuple[int, ...]
    k1: tuple[int, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.k0_plus), len(self.k0_minus), len(self.k1)

    @property
    def absolute_difference(self) -> int:
        return abs(len(self.k0_plus) - len(self.k0_minus))


def classify(sys: IrrationalSystem, eta: Fraction | int = 0) -> EtaClassification:
    """Partition equation indices by whether the eta-action zeroes the
    offset, split by coefficient sign."""
    eta = Fraction(eta)
    plus, minus, rest = [], [], []
    for j, (coeff, offset) in enumerate(sys.equations()):
        if _mod1(offset - coeff * eta) == 0:
            (plus if coeff > 0 else minus).append(j)
        else:
            rest.append(j)
    return EtaClassification(eta, tuple(plus), tuple(minus), tuple(rest))


def eta_action(sys: IrrationalSystem, eta: Fraction | int) -> IrrationalSystem:
    """Re-base the generator by eta: offsets map to {xi_j - p_j*eta}."""
    eta = Fraction(eta)
    new_xi = tuple(_mod1(x - coeff * eta) for coeff, x in sys.equations())
    return IrrationalSystem(sys.p, new_xi)


def candidate_etas(sys: IrrationalSystem) -> tuple[Fraction, ...]:
    """Every eta in [0,1) that zeroes at least one offset; off this set
    the absolute difference number is zero."""
    found = set()
    for coeff, offset in sys.equations():
        for t in range(abs(coeff)):
            found.add(_mod1(Fraction(offset + t, coeff)))
    return tuple(sorted(found))


@dataclass(frozen=True)
class EdnResult:
    value: int
    witness: Fraction | None

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else str(self.witness),
        }


def effective_difference_number(sys: IrrationalSystem) -> EdnResult:
    """Maximum absolute difference number over all rational eta, with
    the smallest maximizing eta in [0,1) as witness."""
    best_value, best_eta = 0, Fraction(0)
    for eta in candidate_etas(sys):
        diff = classify(sys, eta).absolute_difference
        if diff > best_value:
            best_value, best_eta = diff, eta
    return EdnResult(best_value, best_eta)


def dense_eta_grid_max(sys: IrrationalSystem, extra_denominator: int = 1) -> int:
    """Brute-force maximum of the absolute difference number over the
    grid t/L, L = lcm of every offset denominator times coefficient (and
    ``extra_denominator``); cross-checks the candidate-set argument."""
    coeffs = sys.p_vector
    if not coeffs:
        return 0
    grid = math.lcm(
        extra_denominator,
        *(abs(c) * x.denominator for c, x in zip(coeffs, sys.xi)),
    )
    scaled = [x.numerator * (grid // x.denominator) for x in sys.xi]
    best = 0
    for t in range(grid):
        diff = 0
        for coeff, value in zip(coeffs, scaled):
            if (value - coeff * t) % grid == 0:
                diff += 1 if coeff > 0 else -1
        best = max(best, abs(diff))
    return best


def expand_equation(sys: IrrationalSystem, j: int) -> IrrationalSystem:
    """Replace zero-offset equation j (coefficient p) by |p| equations
    of coefficient sign(p) with offsets t/|p|; equivalence-preserving."""
    equations = list(sys.equations())
    coeff, offset = equations[j]
    if offset != 0:
        raise ConditionError(f"equation {j} has offset {offset}; expansion needs offset 0")
    size = abs(coeff)
    sign = 1 if coeff > 0 else -1
    replacement = [(sign, Fraction(t, size)) for t in range(size)]
    equations[j:j + 1] = replacement
    return IrrationalSystem.rank_one(
        [c for c, _ in equations], [x for _, x in equations]
    )


def cutoff_pairs(sys: IrrationalSystem) -> IrrationalSystem:
    """Greedily remove pairs with coefficient product -1 and offsets
    summing to an integer; such pairs never contribute to any absolute
    difference number.  Requires the offset-sum condition (so the
    result can never be emptied out)."""
    _require_conditions(sys)
    equations = list(sys.equations())
    changed = True
    while changed:
        changed = False
        for a in range(len(equations)):
            ca, xa = equations[a]
            partner = None
            for b in range(a + 1, len(equations)):
                cb, xb = equations[b]
                if ca * cb == -1 and _mod1(xa + xb) == 0:
                    partner = b
                    break
            if partner is not None:
                del equations[partner]
                del equations[a]
                changed = True
                break
    if not equations:
        raise ConditionError("cutoff emptied the system; offset-sum condition was violated")
    return IrrationalSystem.rank_one([c for c, _ in equations], [x for _, x in equations])


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "eta" | "expand" | "cutoff"
    detail: str
    system: IrrationalSystem

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "system": self.system.to_json_dict()}


@dataclass(frozen=True)
class ReductionResult:
    initial: IrrationalSystem
    steps: tuple[ReductionStep, ...]

    @property
    def system(self) -> IrrationalSystem:
        return self.steps[-1].system if self.steps else self.initial

    def systems(self) -> list[IrrationalSystem]:
        return [self.initial] + [step.system for step in self.steps]

    def to_json_dict(self) -> dict:
        return {
            "initial": self.initial.to_json_dict(),
            "steps": [step.to_json_dict() for step in self.steps],
            "final": self.system.to_json_dict(),
        }


def reduce_system(sys: IrrationalSystem) -> ReductionResult:
    """Drive a rank-1 system to unit coefficients: walk the equations
    from the last to the first, zeroing the offset of each non-unit
    equation by an eta-action and expanding it, then cut off the
    superfluous opposite pairs.  Unit equations are already in target
    form, so they are left alone (their offsets still move under the
    eta-actions of later steps).  The effective difference number is
    preserved at every step."""
    _require_conditions(sys)
    steps: list[ReductionStep] = []
    current = sys
    for j in range(sys.k - 1, -1, -1):
        coeff, offset = current.equations()[j]
        if abs(coeff) == 1:
            continue
        if offset != 0:
            eta = Fraction(offset, coeff)
            current = eta_action(current, eta)
            steps.append(ReductionStep("eta", f"eta = {eta}", current))
        current = expand_equation(current, j)
        steps.append(ReductionStep("expand", f"equation {j} expanded", current))
    trimmed = cutoff_pairs(current)
    if trimmed.k != current.k:
        steps.append(ReductionStep("cutoff", f"removed {(current.k - trimmed.k) // 2} pairs", trimmed))
    final = steps[-1].system if steps else current
    if any(abs(c) != 1 for c in final.p_vector):
        raise ValidationError("reduction failed to reach unit coefficients")
    _require_conditions(final)
    return ReductionResult(sys, tuple(steps))


def matrix_rank(sys: IrrationalSystem) -> int:
    """Rank of the coefficient matrix over the rationals."""
    rows = [[Fraction(v) for v in row] for row in sys.p]
    rank = 0
    col = 0
    n_cols = sys.r
    while col < n_cols and rank < len(rows):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / lead
                for c in range(col, n_cols):
                    rows[i][c] -= factor * rows[rank][c]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class NormalizedRepresentation:
    system: IrrationalSystem
    column_scales: tuple[int, ...]
    offset_shifts: tuple[int, ...]


def normalize_representation(coeffs, offsets) -> NormalizedRepresentation:
    """Clear denominators column by column (rescaling each generator by
    the lcm of the column's denominators) and reduce offsets mod 1; the
    dropped integer parts are returned as bookkeeping."""
    rows = [[Fraction(v) for v in row] for row in coeffs]
    raw_offsets = [Fraction(x) for x in offsets]
    if len(rows) != len(raw_offsets):
        raise ValidationError("coefficient rows and offsets disagree in length")
    n_cols = len(rows[0]) if rows else 0
    if any(len(row) != n_cols for row in rows):
        raise ValidationError("coefficient rows have unequal lengths")
    scales = []
    for col in range(n_cols):
        denominators = [row[col].denominator for row in rows if row[col] != 0]
        scales.append(math.lcm(*denominators) if denominators else 1)
    matrix = tuple(
        tuple(int(row[col] * scales[col]) for col in range(n_cols)) for row in rows
    )
    shifts = tuple(math.floor(x) for x in raw_offsets)
    reduced = tuple(_mod1(x) for x in raw_offsets)
    return NormalizedRepresentation(IrrationalSystem(matrix, reduced), tuple(scales), shifts)


@dataclass(frozen=True)
class CollapseResult:
    system: IrrationalSystem
    shifts: tuple[int, ...]


def collapse_rank(sys: IrrationalSystem) -> CollapseResult:
    """Collapse a multi-generator system to a single generator: find
    integers s_2..s_r with p[j][0] + sum s_l*p[j][l] nonzero for every
    row, by scaling the smallest direction that clears the zero rows'
    hyperplanes.  Column sums zero are preserved, so the collapsed
    system is again a balanced rank-1 system (offsets unchanged)."""
    if sys.r == 0:
        raise ValidationError("cannot collapse an empty system")
    for j, row in enumerate(sys.p):
        if all(v == 0 for v in row):
            raise ValidationError(f"row {j} is identically zero (a rational equation)")
    if sys.r == 1:
        return CollapseResult(sys, ())
    zero_rows = [row for row in sys.p if row[0] == 0]
    direction = _smallest_clearing_direction(zero_rows, sys.r - 1)
    scale = 1
    while True:
        shifts = tuple(scale * v for v in direction)
        collapsed = [
            row[0] + sum(s * row[1 + i] for i, s in enumerate(shifts))
            for row in sys.p
        ]
        if all(v != 0 for v in collapsed):
            system = IrrationalSystem.rank_one(collapsed, sys.xi)
            return CollapseResult(system, shifts)
        scale += 1


def _smallest_clearing_direction(zero_rows, width: int) -> tuple[int, ...]:
    """Deterministically pick the first integer vector (by max-norm,
    then lexicographic order) off every hyperplane sum(row[1:]*x) = 0."""
    if not zero_rows:
        return tuple(0 for _ in range(width))

    def clears(vector) -> bool:
        return all(
            sum(v * row[1 + i] for i, v in enumerate(vector)) != 0 for row in zero_rows
        )

    bound = 1
    while True:
        for vector in _vectors_with_max_norm(width, bound):
            if clears(vector):
                return vector
        bound += 1


def _vectors_with_max_norm(width: int, bound: int):
    def order(scalar: int) -> int:
        # 1, -1, 2, -2, ... 0 last so nonzero coordinates are preferred
        return 0 if scalar == 0 else (2 * scalar - 1 if scalar > 0 else -2 * scalar)

    values = sorted(range(-bound, bound + 1), key=order)
    def rec(prefix, depth):
        if depth == width:
            if max((abs(v) for v in prefix), default=0) == bound:
                yield tuple(prefix)
            return
        for v in values:
            yield from rec(prefix + [v], depth + 1)
    yield from rec([], 0)
