"""Interval form of the index formula, auxiliary boundary functions,
Kronecker orbit scanning, and the desk-scale obstruction scenario.

A rank-1 model consists of parameters (n, k), one quadratic irrational
generator theta, integer coefficients p summing to zero, and rational
offsets xi in [0,1) whose sum is k/2 + n/(2(n+1)) (exactly for user
inputs; derived scan systems only need it mod 1, which is all the
formulas below use).  Writing value_j = p_j*theta + xi_j, the direct
index of the m-th iterate is

    m*n/(n+1) + k - 2*sum_j {m*value_j},

always an integer.  For m = 2(n+1)l + 2L + 1 the same number equals
2nl + 2*floor(Q_L) - 2i where Q_L = k/2 + (2L+1)n/(2(n+1)) and i is
the unique open interval of the dividing points

    0, {Q_L}, 1 + {Q_L}, ..., k-2 + {Q_L}, k-1

containing sum_{j>=2} {m*value_j}.  (For a few shifted L the pattern
degenerates: {Q_L} = 0 makes the leading interval empty, which the
locator handles; the index identity is unaffected.)

The obstruction scenario follows the single-geodesic contradiction
mechanics: apply the witness eta-action, scan the orbit {m_l * theta}
along m_l = 2(n+1)*qbar*l + 1 for a pair of iterates landing near 0
and near 1 whose interval locations differ at L = 0 but agree for all
1 <= |L| <= Nbar, then count iterates carrying two specific equal-Betti
degrees; the counts differ by one, so Morse numbers cannot match the
Betti numbers at both degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BoundaryHitError,
    BudgetExhaustedError,
    ConditionError,
    ParseError,
    ValidationError,
)
from .exactnum import ExactReal, as_exact, parse_exact
from .homology import betti
from .systems import IrrationalSystem, classify, effective_difference_number, eta_action

__all__ = [
    "IntervalPattern",
    "interval_pattern",
    "Rank1Model",
    "index_direct",
    "interval_location",
    "index_via_interval",
    "aux_function_f",
    "aux_function_g",
    "KroneckerScanResult",
    "kronecker_scan",
    "bound_check",
    "bound_check_odd",
    "bound_check_even",
    "ObstructionReport",
    "obstruction_scenario",
]


@dataclass(frozen=True)
class IntervalPattern:
    n: int
    k: int
    L: int
    q_value: Fraction

    @property
    def floor_q(self) -> int:
        return math.floor(self.q_value)

    @property
    def frac_q(self) -> Fraction:
        return self.q_value - math.floor(self.q_value)

    def dividing_points(self) -> tuple[Fraction, ...]:
        points = [Fraction(0)]
        points.extend(i + self.frac_q for i in range(self.k - 1))
        points.append(Fraction(self.k - 1))
        return tuple(points)

    def intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        points = self.dividing_points()
        return tuple(zip(points[:-1], points[1:]))

    def locate(self, x) -> int:
        """Index of the open interval containing x; a boundary hit or a
        value outside (0, k-1) signals corrupted input."""
        value = as_exact(x)
        for i, (lo, hi) in enumerate(self.intervals()):
            if lo < value < hi:
                return i
        raise BoundaryHitError(
            f"{value} hits a dividing point of the (n={self.n}, k={self.k}, L={self.L}) pattern"
        )


@lru_cache(maxsize=None)
def interval_pattern(n: int, k: int, L: int) -> IntervalPattern:
    if n < 1:
        raise ValueError("n must be positive")
    if k < 2:
        raise ValueError("k must be at least 2")
    q_value = Fraction(k, 2) + Fraction((2 * L + 1) * n, 2 * (n + 1))
    return IntervalPattern(n, k, L, q_value)


@dataclass(frozen=True)
class Rank1Model:
    n: int
    k: int
    theta: ExactReal
    p: tuple[int, ...]
    xi: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", as_exact(self.theta))
        object.__setattr__(self, "p", tuple(int(v) for v in self.p))
        object.__setattr__(self, "xi", tuple(Fraction(x) for x in self.xi))

    @property
    def mean_target(self) -> Fraction:
        return Fraction(self.k, 2) + Fraction(self.n, 2 * (self.n + 1))

    def theta_hat(self, j: int) -> ExactReal:
        return self.theta * self.p[j] + self.xi[j]

    def theta_hats(self) -> tuple[ExactReal, ...]:
        return tuple(self.theta_hat(j) for j in range(self.k))

    def validate(self, exact_mean: bool = True) -> list[str]:
        problems = []
        if self.n < 1:
            problems.append("n must be positive")
        if self.k < 2:
            problems.append("k must be at least 2")
        elif self.k > 2 * self.n:
            problems.append(f"k = {self.k} exceeds 2n = {2 * self.n}")
        if len(self.p) != self.k or len(self.xi) != self.k:
            problems.append("p and xi must both have length k")
            return problems
        if sum(self.p) != 0:
            problems.append(f"coefficients sum to {sum(self.p)}, not 0")
        for j, coeff in enumerate(self.p):
            if coeff == 0:
                problems.append(f"p[{j}] is zero")
        for j, x in enumerate(self.xi):
            if not 0 <= x < 1:
                problems.append(f"xi[{j}] = {x} outside [0, 1)")
        if self.theta.is_rational:
            problems.append("theta must be irrational")
        total = sum(self.xi, Fraction(0))
        if exact_mean:
            if total != self.mean_target:
                problems.append(
                    f"offset sum {total} != mean target {self.mean_target}"
                )
        elif (total - self.mean_target).denominator != 1:
            problems.append(
                f"offset sum {total} != mean target {self.mean_target} (mod 1)"
            )
        return problems

    def system(self) -> IrrationalSystem:
        return IrrationalSystem.rank_one(self.p, self.xi)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "theta": str(self.theta),
            "p": list(self.p),
            "xi": [
                f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
                for x in self.xi
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Rank1Model":
        if not isinstance(data, dict):
            raise ParseError("rank-1 model must be a JSON object")
        required = {"n", "k", "theta", "p", "xi"}
        unknown = set(data) - required
        if unknown:
            raise ParseError(f"unknown model keys: {sorted(unknown)}")
        missing = required - set(data)
        if missing:
            raise ParseError(f"missing model keys: {sorted(missing)}")
        for key in ("n", "k"):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise ParseError(f"field {key!r} must be an integer")
        if not isinstance(data["p"], list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in data["p"]
        ):
            raise ParseError("field 'p' must be a list of integers")
        if not isinstance(data["xi"], list):
            raise ParseError("field 'xi' must be a list of rational strings")
        try:
            xi = tuple(Fraction(s) for s in data["xi"])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"bad offset in {data['xi']!r}") from exc
        theta = parse_exact(data["theta"])
        return cls(data["n"], data["k"], theta, tuple(data["p"]), xi)


def _ensure_model(model: Rank1Model, exact_mean: bool) -> None:
    problems = model.validate(exact_mean=exact_mean)
    if problems:
        raise ValidationError("invalid rank-1 model: " + "; ".join(problems))


def index_direct(model: Rank1Model, m: int) -> int:
    """Index of the m-th iterate by the direct fractional-part formula."""
    if m < 1:
        raise ValueError("iterate m must be positive")
    total = as_exact(0)
    for j in range(model.k):
        total = total + (model.theta_hat(j) * m).frac()
    value = Fraction(model.n, model.n + 1) * m + model.k - 2 * total
    if not value.is_integer:
        raise ValidationError(f"direct index formula produced non-integer {value}")
    return value.as_fraction().numerator


def interval_location(model: Rank1Model, l: int, L: int, drop: int = 0) -> tuple[int, ExactReal]:
    """Interval index i and the located sum over the k-1 kept equations
    for the iterate m = 2(n+1)l + 2L + 1."""
    m = 2 * (model.n + 1) * l + 2 * L + 1
    if m < 1:
        raise ValueError(f"(l={l}, L={L}) gives non-positive iterate {m}")
    if not 0 <= drop < model.k:
        raise ValueError("dropped equation index out of range")
    total = as_exact(0)
    for j in range(model.k):
        if j != drop:
            total = total + (model.theta_hat(j) * m).frac()
    pattern = interval_pattern(model.n, model.k, L)
    return pattern.locate(total), total


def index_via_interval(model: Rank1Model, l: int, L: int, drop: int = 0) -> int:
    """Index of the iterate m = 2(n+1)l + 2L + 1 through the interval
    pattern; agrees with :func:`index_direct` on every valid model."""
    i, _ = interval_location(model, l, L, drop)
    pattern = interval_pattern(model.n, model.k, L)
    return 2 * model.n * l + 2 * pattern.floor_q - 2 * i


def _nonzero_prefix_length(model: Rank1Model) -> int:
    k1 = 0
    seen_zero = False
    for x in model.xi:
        if x != 0:
            if seen_zero:
                raise ConditionError(
                    "auxiliary function needs all nonzero offsets before the zero ones"
                )
            k1 += 1
        else:
            seen_zero = True
    if k1 == 0:
        raise ConditionError("auxiliary function needs at least one nonzero offset")
    return k1


def aux_function_f(model: Rank1Model, L: int, x) -> ExactReal:
    """Boundary function f_L(x) = sum_{j>=2} {{p_j x + xi_j} + 2L*value_j};
    at orbit points x = {m_l*theta} it reproduces the located sums of the
    shifted iterates m_l + 2L."""
    _nonzero_prefix_length(model)
    point = as_exact(x)
    if not 0 <= point <= 1:
        raise ValueError("x must lie in [0, 1]")
    total = as_exact(0)
    for j in range(1, model.k):
        inner = (point * model.p[j] + model.xi[j]).frac()
        total = total + (inner + model.theta_hat(j) * (2 * L)).frac()
    return total


def aux_function_g(p, xi, k1: int, L: int, xs, theta_hats=None) -> ExactReal:
    """Multi-generator boundary function
    g_L(x) = sum_{j>=2} {sum_l p[j][l]*x_l + (xi_j if j <= k1) + 2L*value_j}.

    With L = 0 the evaluation is purely rational in the sample point;
    shifted L need the equation values themselves (one common field)."""
    rows = [tuple(int(v) for v in row) for row in p]
    offsets = [Fraction(v) for v in xi]
    if L != 0 and theta_hats is None:
        raise ValidationError("shifted g_L needs the equation values theta_hats")
    total = as_exact(0)
    for j in range(1, len(rows)):
        combo = as_exact(0)
        for coeff, value in zip(rows[j], xs):
            combo = combo + as_exact(value) * coeff
        if j < k1:
            combo = combo + offsets[j]
        if L != 0:
            combo = combo + theta_hats[j] * (2 * L)
        total = total + combo.frac()
    return total


@dataclass(frozen=True)
class KroneckerScanResult:
    found: bool
    m: int | None
    scanned: int

    def to_json_dict(self) -> dict:
        return {"found": self.found, "m": self.m, "scanned": self.scanned}


def kronecker_scan(thetas, box, budget: int) -> KroneckerScanResult:
    """Smallest m <= budget with every {m*theta_i} inside the open box,
    by exact scanning.  Generators are handled independently (they may
    live in different quadratic fields); rational independence for
    r >= 2 is the caller's responsibility."""
    generators = [as_exact(t) for t in thetas]
    if not generators:
        raise ValidationError("at least one generator is required")
    for t in generators:
        if t.is_rational:
            raise ValidationError(f"generator {t} is rational; the orbit is not dense")
    bounds = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    if len(bounds) != len(generators):
        raise ValidationError("box dimension must match the number of generators")
    if any(lo >= hi for lo, hi in bounds):
        return KroneckerScanResult(False, None, 0)
    if budget < 1:
        raise ValueError("budget must be positive")
    positions = [t.frac() for t in generators]
    for m in range(1, budget + 1):
        if all(lo < x < hi for x, (lo, hi) in zip(positions, bounds)):
            return KroneckerScanResult(True, m, m)
        positions = [
            (x + t).frac() for x, t in zip(positions, generators)
        ]
    return KroneckerScanResult(False, None, budget)


def bound_check(model: Rank1Model, l: int, m: int) -> bool:
    """Truth of: |m - 2(n+1)l| > 4(n+1) implies |index(m) - 2nl| > 2n."""
    if l < 1 or m < 1:
        raise ValueError("l and m must be positive")
    n = model.n
    if abs(m - 2 * (n + 1) * l) <= 4 * (n + 1):
        return True
    return abs(index_direct(model, m) - 2 * n * l) > 2 * n


def bound_check_odd(model: Rank1Model, l: int, m: int) -> bool:
    """Gap bound for odd-dimensional parameterizations (any iterate m)."""
    return bound_check(model, l, m)


def bound_check_even(model: Rank1Model, l: int, m: int) -> bool:
    """Gap bound for even-dimensional parameterizations, where the index
    formula only covers odd iterates."""
    if m % 2 == 0:
        raise ValueError("the even-dimensional bound applies to odd iterates only")
    return bound_check(model, l, m)


@dataclass(frozen=True)
class ObstructionReport:
    model: Rank1Model
    witness_eta: Fraction
    edn: int
    acted_model: Rank1Model
    permutation: tuple[int, ...]
    k1: int
    q_bar: int
    n_bar: int
    t_level: int
    epsilon: Fraction
    avoidance_radius: ExactReal
    l1: int
    l2: int
    m1: int
    m2: int
    x1: ExactReal
    x2: ExactReal
    i_prime: int
    i_double_prime: int
    window: tuple[int, int]
    iterate_rows: tuple[tuple[int, int, int, int, bool], ...]  # (side, L, m, index, agree)
    degree_d1_prime: int
    degree_d1: int
    degree_d2: int
    s1_shifts: tuple[int, ...]
    s2_shifts: tuple[int, ...]
    betti_value: int
    scanned: int

    @property
    def routes_agree(self) -> bool:
        return all(row[4] for row in self.iterate_rows)

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.s1_shifts), len(self.s2_shifts)

    @property
    def conflict(self) -> bool:
        s1, s2 = self.counts
        return s2 >= s1 + 1

    def summary(self) -> str:
        s1, s2 = self.counts
        return (
            f"degrees {self.degree_d1} and {self.degree_d2} share Betti number "
            f"{self.betti_value} but carry {s1} and {s2} iterates; a single "
            f"geodesic cannot satisfy Morse = Betti at both"
        )

    def to_json_dict(self) -> dict:
        return {
            "model": self.model.to_json_dict(),
            "witness_eta": str(self.witness_eta),
            "edn": self.edn,
            "acted_model": self.acted_model.to_json_dict(),
            "permutation": list(self.permutation),
            "k1": self.k1,
            "q_bar": self.q_bar,
            "n_bar": self.n_bar,
            "t_level": self.t_level,
            "epsilon": str(self.epsilon),
            "avoidance_radius": str(self.avoidance_radius),
            "pair": {
                "l1": self.l1,
                "l2": self.l2,
                "m1": self.m1,
                "m2": self.m2,
                "x1": str(self.x1),
                "x2": str(self.x2),
                "i_prime": self.i_prime,
                "i_double_prime": self.i_double_prime,
            },
            "window": list(self.window),
            "iterates": [
                {"side": side, "L": L, "m": m, "index": idx, "routes_agree": agree}
                for side, L, m, idx, agree in self.iterate_rows
            ],
            "degrees": {
                "d1_prime": self.degree_d1_prime,
                "d1_double_prime": self.degree_d1,
                "d2_double_prime": self.degree_d2,
            },
            "shifts": {"s1": list(self.s1_shifts), "s2": list(self.s2_shifts)},
            "counts": {"s1": self.counts[0], "s2": self.counts[1]},
            "betti_value": self.betti_value,
            "routes_agree": self.routes_agree,
            "conflict": self.conflict,
            "summary": self.summary(),
            "scanned": self.scanned,
        }


def _discontinuity_distance(model: Rank1Model, point: ExactReal) -> ExactReal:
    """Distance from the point to the nearest jump of the L = 0 boundary
    function (all jumps are rational, so the distance is irrational)."""
    jumps = {Fraction(0), Fraction(1)}
    for j in range(1, model.k):
        coeff, offset = model.p[j], model.xi[j]
        for t in range(abs(coeff)):
            raw = Fraction(t - offset, coeff)
            jumps.add(raw - math.floor(raw))
    distance: ExactReal | None = None
    for jump in jumps:
        gap = abs(point - jump)
        if distance is None or gap < distance:
            distance = gap
    return distance


def obstruction_scenario(
    model: Rank1Model,
    budget: int,
    n_bar: int | None = None,
    validate: bool = True,
) -> ObstructionReport:
    """Run the single-geodesic obstruction mechanics on one model.

    Steps: verify the balance conditions and the effective difference
    number; apply the witness eta-action and reorder so the nonzero
    offsets lead; scan the orbit of the periodized iterates m_l for a
    pair separating at L = 0 while stable for 1 <= |L| <= n_bar; then
    tabulate both index routes over the full gap-bound window and count
    the iterates carrying the two target degrees."""
    if validate:
        _ensure_model(model, exact_mean=True)
    n, k = model.n, model.k
    if n_bar is None:
        n_bar = 4 * (n + 1) + 1
    edn = effective_difference_number(model.system())
    if edn.value < 1:
        raise ConditionError(
            "effective difference number is 0; a balanced system cannot do this"
        )
    acted = eta_action(model.system(), edn.witness)
    order = [j for j, x in enumerate(acted.xi) if x != 0]
    order += [j for j, x in enumerate(acted.xi) if x == 0]
    permutation = tuple(order)
    acted_model = Rank1Model(
        n,
        k,
        model.theta + edn.witness,
        tuple(model.p[j] for j in order),
        tuple(acted.xi[j] for j in order),
    )
    _ensure_model(acted_model, exact_mean=False)
    split = classify(acted_model.system(), 0)
    if split.absolute_difference < 1:
        raise ConditionError("witness action failed to expose a difference at eta = 0")
    k1 = len(split.k1)
    q_bar = math.prod(acted_model.xi[j].denominator for j in range(k1))
    step = 2 * (n + 1) * q_bar
    theta_acted = acted_model.theta
    delta = (theta_acted * step).frac()
    position = theta_acted.frac()

    pattern0 = interval_pattern(n, k, 0)
    shifted_range = [L for L in range(-n_bar, n_bar + 1) if L != 0]

    def locations(x: ExactReal) -> dict[int, int] | None:
        spots: dict[int, int] = {}
        for L in [0, *shifted_range]:
            value = aux_function_f(acted_model, L, x)
            try:
                spots[L] = interval_pattern(n, k, L).locate(value)
            except BoundaryHitError:
                return None
        return spots

    best_a: tuple[int, ExactReal] | None = None
    best_b: tuple[int, ExactReal] | None = None
    t_level = 1
    success: tuple[int, ExactReal, dict, int, ExactReal, dict] | None = None
    scanned = 0
    for l in range(1, budget + 1):
        scanned = l
        position = (position + delta).frac()
        improved = False
        if best_a is None or position < best_a[1]:
            best_a = (l, position)
            improved = True
        if best_b is None or position > best_b[1]:
            best_b = (l, position)
            improved = True
        if not improved:
            continue
        epsilon = Fraction(1, 2 ** t_level)
        while best_a[1] < epsilon and best_b[1] > 1 - epsilon:
            spots_a = locations(best_a[1])
            spots_b = locations(best_b[1])
            if (
                spots_a is not None
                and spots_b is not None
                and spots_a[0] != spots_b[0]
                and all(spots_a[L] == spots_b[L] for L in shifted_range)
            ):
                success = (best_a[0], best_a[1], spots_a, best_b[0], best_b[1], spots_b)
                break
            t_level += 1
            epsilon = Fraction(1, 2 ** t_level)
        if success:
            break
    if not success:
        raise BudgetExhaustedError(
            f"no separating orbit pair within {budget} scan steps", scanned=scanned
        )

    l1, x1, spots_a, l2, x2, spots_b = success
    m1 = step * l1 + 1
    m2 = step * l2 + 1
    i_prime = spots_a[0]
    i_double_prime = spots_b[0]

    window_lo, window_hi = -2 * (n + 1), 2 * n + 1
    rows: list[tuple[int, int, int, int, bool]] = []
    indices: dict[tuple[int, int], int] = {}
    for side, (l_value, m_value) in enumerate(((l1, m1), (l2, m2)), start=1):
        for L in range(window_lo, window_hi + 1):
            m_shifted = m_value + 2 * L
            if m_shifted < 1:
                continue
            direct = index_direct(acted_model, m_shifted)
            via = index_via_interval(acted_model, q_bar * l_value, L)
            rows.append((side, L, m_shifted, direct, direct == via))
            indices[(side, L)] = direct

    d1_prime = indices[(1, 0)]
    d1 = 2 * n * q_bar * l1 + 2 * pattern0.floor_q - 2 * i_double_prime
    d2 = 2 * n * q_bar * l2 + 2 * pattern0.floor_q - 2 * i_double_prime
    if d1_prime != 2 * n * q_bar * l1 + 2 * pattern0.floor_q - 2 * i_prime:
        raise ValidationError("located interval disagrees with the direct index at l1")
    if indices[(2, 0)] != d2:
        raise ValidationError("located interval disagrees with the direct index at l2")
    s1 = tuple(
        L for L in range(window_lo, window_hi + 1) if indices.get((1, L)) == d1
    )
    s2 = tuple(
        L for L in range(window_lo, window_hi + 1) if indices.get((2, L)) == d2
    )
    betti_dim = 2 * n + 1
    b1 = betti(betti_dim, d1) if d1 >= 0 else 0
    b2 = betti(betti_dim, d2) if d2 >= 0 else 0
    if b1 != b2:
        raise ValidationError("target degrees disagree on Betti numbers; scenario bug")
    radius = min(
        _discontinuity_distance(acted_model, x1),
        _discontinuity_distance(acted_model, x2),
    )
    return ObstructionReport(
        model=model,
        witness_eta=edn.witness,
        edn=edn.value,
        acted_model=acted_model,
        permutation=permutation,
        k1=k1,
        q_bar=q_bar,
        n_bar=n_bar,
        t_level=t_level,
        epsilon=Fraction(1, 2 ** t_level),
        avoidance_radius=radius,
        l1=l1,
        l2=l2,
        m1=m1,
        m2=m2,
        x1=x1,
        x2=x2,
        i_prime=i_prime,
        i_double_prime=i_double_prime,
        window=(window_lo, window_hi),
        iterate_rows=tuple(rows),
        degree_d1_prime=d1_prime,
        degree_d1=d1,
        degree_d2=d2,
        s1_shifts=s1,
        s2_shifts=s2,
        betti_value=b1,
        scanned=scanned,
    )
