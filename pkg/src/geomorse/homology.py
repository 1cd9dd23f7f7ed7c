"""Betti numbers of the non-contractible loop space of real projective
space, Morse-type numbers of geodesic models, and the resonance checker.

For odd-dimensional RP^n the equivariant Betti number is 2 at positive
multiples of n - 1, 1 at the remaining even degrees, 0 at odd degrees;
for even n the doubled degrees are the positive multiples of 2(n - 1).
Both patterns are also produced independently by expanding the
corresponding rational generating function as an exact power series,
which the test suite compares termwise against the closed form.

The resonance checker forms each model's mean Euler number

    chi_hat = (1/period) * sum over odd iterates, degrees of
              (-1)^(degree + ind1) * k_degree

and evaluates sum(chi_hat / mean_index) - average_betti exactly; the
identity holds (residual zero) precisely when the models are mutually
consistent with the loop-space homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergenceError, ValidationError
from .exactnum import ExactReal, as_exact
from .iteration import index_of, mean_index
from .normalform import GeodesicModel, effective_period

__all__ = [
    "betti",
    "betti_series_oracle",
    "average_betti",
    "partial_alternating_average",
    "BettiTable",
    "morse_type_numbers",
    "claim_one_bound",
    "MorseBettiReport",
    "bumpy_morse_equals_betti",
    "ResonanceReport",
    "resonance_check",
]


def _check_dim(n: int) -> None:
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")


def betti(n: int, q: int) -> int:
    """Equivariant Betti number of the non-contractible loop space of RP^n."""
    _check_dim(n)
    if q < 0:
        raise ValueError(f"degree must be non-negative, got {q}")
    if q % 2:
        return 0
    doubling = (n - 1) if n % 2 else 2 * (n - 1)
    return 2 if q > 0 and q % doubling == 0 else 1


def _betti_or_zero(n: int, q: int) -> int:
    return 0 if q < 0 else betti(n, q)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus_t_power(e: int) -> list[int]:
    poly = [0] * (e + 1)
    poly[0], poly[e] = 1, -1
    return poly


def betti_series_oracle(n: int, max_q: int) -> list[int]:
    """Power-series coefficients of the equivariant Poincare series of
    the non-contractible loop space, by exact long division."""
    _check_dim(n)
    if max_q < 0:
        raise ValueError("max_q must be non-negative")
    if n % 2:
        k = (n - 1) // 2
        num = _one_minus_t_power(2 * k + 2)
        den = _poly_mul(_one_minus_t_power(2), _one_minus_t_power(2 * k))
    else:
        k = n // 2
        num = _one_minus_t_power(4 * k)
        den = _poly_mul(_one_minus_t_power(2), _one_minus_t_power(4 * k - 2))
    coeffs: list[int] = []
    for q in range(max_q + 1):
        value = num[q] if q < len(num) else 0
        for i in range(1, min(q, len(den) - 1) + 1):
            value -= den[i] * coeffs[q - i]
        coeffs.append(value)  # den[0] == 1
    return coeffs


def average_betti(n: int) -> Fraction:
    """Limit of the degree-averaged alternating Betti sums."""
    _check_dim(n)
    if n % 2:
        return Fraction(n + 1, 2 * (n - 1))
    return Fraction(n, 2 * (n - 1))


def partial_alternating_average(n: int, q: int) -> Fraction:
    """(1/q) * sum_{k<=q} (-1)^k betti(n, k); converges to average_betti."""
    if q < 1:
        raise ValueError("q must be positive")
    total = sum((-1) ** k * betti(n, k) for k in range(q + 1))
    return Fraction(total, q)


@dataclass(frozen=True)
class BettiTable:
    n: int
    values: tuple[int, ...]
    average: Fraction

    @classmethod
    def compute(cls, n: int, max_q: int) -> "BettiTable":
        return cls(n, tuple(betti(n, q) for q in range(max_q + 1)), average_betti(n))

    def validate(self) -> list[str]:
        problems = []
        for q, b in enumerate(self.values):
            if b not in (0, 1, 2):
                problems.append(f"betti[{q}] = {b} outside {{0, 1, 2}}")
            if q % 2 and b != 0:
                problems.append(f"betti[{q}] nonzero at odd degree")
            if b != betti(self.n, q):
                problems.append(f"betti[{q}] = {b} != closed form {betti(self.n, q)}")
        if self.average != average_betti(self.n):
            problems.append("average disagrees with the closed form")
        return problems


def _positive_mean(model: GeodesicModel) -> ExactReal:
    mean = mean_index(model)
    if mean.sign() <= 0:
        raise DivergenceError(
            "iterate enumeration diverges: mean index must be positive"
        )
    return mean


def _common_dim(models) -> int:
    dims = {model.dim for model in models}
    if len(dims) > 1:
        raise ValidationError(f"models mix manifold dimensions {sorted(dims)}")
    return dims.pop()


def morse_type_numbers(models, max_degree: int) -> list[int]:
    """Morse-type numbers m_0..m_max_degree contributed by odd iterates.

    Each model contributes k_degree at degree index + degree for every
    odd iterate in one analytical period and every period shift whose
    index can still reach max_degree (bounded via the mean-index
    deviation bound, so the enumeration terminates).
    """
    counts = [0] * (max_degree + 1)
    if not models:
        return counts
    dim = _common_dim(models)
    deviation = 2 * dim - 2
    for model in models:
        problems = model.validate()
        if problems:
            raise ValidationError("invalid geodesic model: " + "; ".join(problems))
        mean = _positive_mean(model)
        period = effective_period(model)
        for base in range(1, period, 2):
            layers = [
                (degree, model.type_number(base, degree))
                for degree in range(0, 2 * dim - 1)
                if model.type_number(base, degree) > 0
            ]
            if not layers:
                continue
            shift = 0
            while True:
                iterate = base + shift * period
                if mean * iterate - deviation > max_degree:
                    break
                idx = index_of(model, iterate)
                for degree, k in layers:
                    h = idx + degree
                    if 0 <= h <= max_degree:
                        counts[h] += k
                shift += 1
    return counts


def claim_one_bound(models) -> ExactReal:
    """Upper bound sum k_degree * ((4n-4)/(period*mean) + 1) for every
    Morse-type number of the model list."""
    if not models:
        return as_exact(0)
    dim = _common_dim(models)
    total = as_exact(0)
    for model in models:
        mean = _positive_mean(model)
        period = effective_period(model)
        per_s = as_exact(4 * dim - 4) / (mean * period) + 1
        weight = sum(
            model.type_number(base, degree)
            for base in range(1, period, 2)
            for degree in range(0, 2 * dim - 1)
        )
        total = total + per_s * weight
    return total


@dataclass(frozen=True)
class MorseBettiReport:
    n: int
    max_degree: int
    morse: tuple[int, ...]
    betti: tuple[int, ...]
    mismatches: tuple[tuple[int, int, int], ...]

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "morse": list(self.morse),
            "betti": list(self.betti),
            "mismatches": [list(entry) for entry in self.mismatches],
            "consistent": self.consistent,
        }


def bumpy_morse_equals_betti(
    model: GeodesicModel, n: int, max_degree: int
) -> MorseBettiReport:
    """Compare the Morse-type numbers of a single bumpy model against
    the Betti table; the returned report lists every degree <= max_degree
    where equality fails (an empty report means the single-geodesic
    hypothesis survives to this degree)."""
    if not model.is_bumpy:
        raise ValidationError("the Morse = Betti comparison requires a bumpy model")
    if model.dim != n:
        raise ValidationError(f"model dimension {model.dim} != n = {n}")
    morse = tuple(morse_type_numbers([model], max_degree))
    table = tuple(betti(n, q) for q in range(max_degree + 1))
    mismatches = tuple(
        (q, morse[q], table[q]) for q in range(max_degree + 1) if morse[q] != table[q]
    )
    return MorseBettiReport(n, max_degree, morse, table, mismatches)


@dataclass(frozen=True)
class ResonanceReport:
    n: int
    chi_hats: tuple[Fraction, ...]
    mean_indices: tuple[ExactReal, ...]
    average: Fraction
    residual: ExactReal
    bumpy_residual: ExactReal | None

    @property
    def exact_zero(self) -> bool:
        return self.residual.sign() == 0

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "terms": [
                {"chi_hat": str(chi), "mean_index": str(mean)}
                for chi, mean in zip(self.chi_hats, self.mean_indices)
            ],
            "average_betti": str(self.average),
            "residual": str(self.residual),
            "exact_zero": self.exact_zero,
        }
        if self.bumpy_residual is not None:
            out["bumpy_residual"] = str(self.bumpy_residual)
            out["bumpy_exact_zero"] = self.bumpy_residual.sign() == 0
        return out


def chi_hat(model: GeodesicModel) -> Fraction:
    """Mean Euler number: the signed type-number average over one
    analytical period of odd iterates."""
    period = effective_period(model)
    total = 0
    for base in range(1, period, 2):
        for degree in range(0, 2 * model.dim - 1):
            k = model.type_number(base, degree)
            if k:
                total += (-1) ** (degree + model.ind1) * k
    return Fraction(total, period)


def resonance_check(models, n: int) -> ResonanceReport:
    """Exact residual of sum(chi_hat/mean_index) against the average
    Betti number, plus the reduced all-bumpy form when it applies."""
    if not models:
        raise ValidationError("resonance check needs at least one model")
    for model in models:
        problems = model.validate()
        if problems:
            raise ValidationError("invalid geodesic model: " + "; ".join(problems))
        if model.dim != n:
            raise ValidationError(f"model dimension {model.dim} != n = {n}")
    chis = tuple(chi_hat(model) for model in models)
    means = tuple(_positive_mean(model) for model in models)
    total = as_exact(0)
    for chi, mean in zip(chis, means):
        total = total + as_exact(chi) / mean
    average = average_betti(n)
    residual = total - average
    bumpy_residual = None
    if all(model.is_bumpy for model in models):
        reduced = as_exact(0)
        for model, mean in zip(models, means):
            reduced = reduced + as_exact((-1) ** model.ind1) / mean
        bumpy_residual = reduced - 2 * average
    return ResonanceReport(n, chis, means, average, residual, bumpy_residual)
