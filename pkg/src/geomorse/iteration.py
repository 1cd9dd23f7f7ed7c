"""Iteration formulas for Morse index and nullity of closed geodesics.

The orientable formulas take a normal form plus the initial index i1
(respectively initial nullity nu1) of the underlying path at m = 1 and
produce the index and nullity of the m-th iterate.  The minus-one
variants are the Bott differences i(2m) - i(m) and nu(2m) - nu(m); a
closed form for them (through the half-shift identity E(2a) - E(a) =
E(a - 1/2)) is implemented separately so the two transcriptions can be
checked against each other.  Non-orientable geodesics use the
parity-shifted operators and a dimension-parity correction.

All functions are pure; angles enter pre-divided by 2*pi.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import FormulaDomainError, MixedRadicandError, ValidationError
from .exactnum import (
    HALF,
    ExactReal,
    as_exact,
    ceil_int,
    ceil_shifted,
    phi,
    phi_shifted,
)
from .normalform import GeodesicModel, NormalFormDecomposition

__all__ = [
    "index_orientable",
    "nullity_orientable",
    "index_minus1",
    "nullity_minus1",
    "index_minus1_direct",
    "nullity_minus1_direct",
    "index_nonorientable",
    "nullity_nonorientable",
    "index_of",
    "nullity_of",
    "mean_index",
    "mean_index_bound_check",
    "IndexSequence",
]


@lru_cache(maxsize=None)
def _ensure_valid_nf(nf: NormalFormDecomposition) -> None:
    problems = nf.validate()
    if problems:
        raise ValidationError("invalid normal form: " + "; ".join(problems))


def _ensure_valid_model(model: GeodesicModel) -> None:
    problems = model.validate()
    if problems:
        raise ValidationError("invalid geodesic model: " + "; ".join(problems))


def _require_positive(m: int) -> None:
    if m < 1:
        raise ValueError(f"iterate m must be positive, got {m}")


def _even(m: int) -> int:
    return 1 if m % 2 == 0 else 0


def index_orientable(nf: NormalFormDecomposition, i1: int, m: int) -> int:
    """Index of the m-th iterate of an orientable closed geodesic."""
    _ensure_valid_nf(nf)
    _require_positive(m)
    value = (
        m * (i1 + nf.p_minus + nf.p_zero - nf.r)
        - (nf.p_minus + nf.p_zero + nf.r)
        - _even(m) * (nf.q_zero + nf.q_plus)
        - 2 * nf.r_star
    )
    value += 2 * sum(ceil_int(theta * m) for theta in nf.thetas)
    value += 2 * sum(phi(alpha * m) for alpha in nf.alphas)
    return value


def nullity_orientable(nf: NormalFormDecomposition, nu1: int, m: int) -> int:
    """Nullity of the m-th iterate of an orientable closed geodesic."""
    _ensure_valid_nf(nf)
    _require_positive(m)
    vanish = (
        (nf.r - sum(phi(theta * m) for theta in nf.thetas))
        + (nf.r_star - sum(phi(alpha * m) for alpha in nf.alphas))
        + (nf.r_zero - sum(phi(beta * m) for beta in nf.betas))
    )
    return nu1 + _even(m) * nf.eigenvalue_minus_one_count() + 2 * vanish


def index_minus1(nf: NormalFormDecomposition, i1: int, m: int) -> int:
    """Bott difference i(2m) - i(m)."""
    return index_orientable(nf, i1, 2 * m) - index_orientable(nf, i1, m)


def nullity_minus1(nf: NormalFormDecomposition, nu1: int, m: int) -> int:
    """Bott difference nu(2m) - nu(m)."""
    return nullity_orientable(nf, nu1, 2 * m) - nullity_orientable(nf, nu1, m)


def index_minus1_direct(nf: NormalFormDecomposition, i1: int, m: int) -> int:
    """Closed form of the Bott difference via E(a - 1/2) terms; must
    agree with :func:`index_minus1` for every input."""
    _ensure_valid_nf(nf)
    _require_positive(m)
    value = (
        m * (i1 + nf.p_minus + nf.p_zero - nf.r)
        - (nf.q_zero + nf.q_plus)
        - 2 * nf.r_star
    )
    value += 2 * sum(ceil_int(theta * m - HALF) for theta in nf.thetas)
    value += 2 * sum(phi(alpha * m - HALF) for alpha in nf.alphas)
    return value


def nullity_minus1_direct(nf: NormalFormDecomposition, m: int) -> int:
    """Closed form of nu(2m) - nu(m); independent of the initial nullity."""
    _ensure_valid_nf(nf)
    _require_positive(m)
    vanish = (
        (nf.r - sum(phi(theta * m - HALF) for theta in nf.thetas))
        + (nf.r_star - sum(phi(alpha * m - HALF) for alpha in nf.alphas))
        + (nf.r_zero - sum(phi(beta * m - HALF) for beta in nf.betas))
    )
    return nf.eigenvalue_minus_one_count() + 2 * vanish


def _require_nonorientable(model: GeodesicModel) -> None:
    if model.orientable:
        raise FormulaDomainError(
            "the non-orientable iteration formula does not apply to orientable models"
        )


def index_nonorientable(model: GeodesicModel, m: int) -> int:
    """Index of the m-th iterate of a non-orientable closed geodesic."""
    _require_nonorientable(model)
    _ensure_valid_model(model)
    _require_positive(m)
    nf = model.nf
    odd_dim = model.dim % 2
    value = (
        m * (model.ind1 + nf.q_zero + nf.q_plus - 2 * nf.r_prime)
        - (nf.q_zero + nf.q_plus)
        - _even(m) * (nf.r + nf.p_minus + nf.p_zero + odd_dim)
        - 2 * nf.r_star
    )
    value += 2 * sum(ceil_shifted(theta * m, m) for theta in nf.thetas)
    value += 2 * sum(phi_shifted(alpha * m, m) for alpha in nf.alphas)
    return value


def nullity_nonorientable(model: GeodesicModel, m: int) -> int:
    """Nullity of the m-th iterate of a non-orientable closed geodesic."""
    _require_nonorientable(model)
    _ensure_valid_model(model)
    _require_positive(m)
    nf = model.nf
    odd_dim = model.dim % 2
    vanish = (
        (nf.r - sum(phi_shifted(theta * m, m) for theta in nf.thetas))
        + (nf.r_star - sum(phi_shifted(alpha * m, m) for alpha in nf.alphas))
        + (nf.r_zero - sum(phi_shifted(beta * m, m) for beta in nf.betas))
    )
    return (
        model.null1
        + _even(m) * (nf.eigenvalue_one_count() + odd_dim)
        + 2 * vanish
    )


def index_of(model: GeodesicModel, m: int) -> int:
    """Index of the m-th iterate, dispatching on orientability."""
    if model.orientable:
        return index_orientable(model.nf, model.ind1, m)
    return index_nonorientable(model, m)


def nullity_of(model: GeodesicModel, m: int) -> int:
    """Nullity of the m-th iterate, dispatching on orientability."""
    if model.orientable:
        return nullity_orientable(model.nf, model.null1, m)
    return nullity_nonorientable(model, m)


def mean_index(model: GeodesicModel) -> ExactReal:
    """Linear growth rate of the index: the coefficient of m in the
    iteration formula.  Requires all thetas to live in one quadratic
    field (their sum appears)."""
    nf = model.nf
    total = as_exact(0)
    try:
        for theta in nf.thetas:
            total = total + theta
    except MixedRadicandError:
        raise MixedRadicandError(
            "mean index needs all rotation angles in a single quadratic field"
        ) from None
    if model.orientable:
        base = model.ind1 + nf.p_minus + nf.p_zero - nf.r
    else:
        base = model.ind1 + nf.q_zero + nf.q_plus - 2 * nf.r_prime
    return base + 2 * total


def mean_index_bound_check(model: GeodesicModel, m_max: int) -> bool:
    """Check |index(c^m) - m*mean| <= 2*dim - 2 for every m <= m_max."""
    _ensure_valid_model(model)
    mean = mean_index(model)
    bound = 2 * model.dim - 2
    for m in range(1, m_max + 1):
        deviation = abs(as_exact(index_of(model, m)) - mean * m)
        if deviation > bound:
            return False
    return True


class IndexSequence:
    """Lazily extended table m -> (index, nullity) for one model.

    Confined to a single thread: the cache is a plain dict and is not
    locked.  Cached entries are recomputed never; a parity check
    (index of odd iterates stays congruent to the initial index mod 2)
    guards each insertion.
    """

    def __init__(self, model: GeodesicModel):
        _ensure_valid_model(model)
        self.model = model
        self._values: dict[int, tuple[int, int]] = {}

    def pair(self, m: int) -> tuple[int, int]:
        _require_positive(m)
        cached = self._values.get(m)
        if cached is not None:
            return cached
        pair = (index_of(self.model, m), nullity_of(self.model, m))
        if m % 2 == 1 and (pair[0] - self.model.ind1) % 2 != 0:
            raise ValidationError(
                f"odd-iterate parity violated at m = {m}: {pair[0]} vs {self.model.ind1}"
            )
        if pair[1] < 0:
            raise ValidationError(f"negative nullity at m = {m}")
        self._values[m] = pair
        return pair

    def index(self, m: int) -> int:
        return self.pair(m)[0]

    def nullity(self, m: int) -> int:
        return self.pair(m)[1]

    def table(self, m_max: int) -> list[tuple[int, int, int]]:
        return [(m, *self.pair(m)) for m in range(1, m_max + 1)]
