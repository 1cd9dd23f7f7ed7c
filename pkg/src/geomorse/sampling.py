"""Deterministic random generators for test and acceptance inputs.

Every generator takes an explicit ``random.Random`` so runs are
reproducible.  Angles are drawn either as rationals with small
denominators or as rational-plus-small-multiple-of-sqrt(2) values, so
sums of angles stay inside one quadratic field.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactnum import ExactReal, as_exact
from .intervals import Rank1Model
from .normalform import GeodesicModel, NormalFormDecomposition
from .systems import IrrationalSystem

__all__ = [
    "random_rational_in_unit",
    "random_irrational_angle",
    "random_normal_form",
    "random_geodesic_model",
    "random_rank_one_model",
    "random_balanced_system",
]

HALF = Fraction(1, 2)


def random_rational_in_unit(rng: random.Random, max_den: int = 9) -> Fraction:
    """A rational in (0,1) \\ {1/2}."""
    while True:
        den = rng.randint(2, max_den)
        num = rng.randint(1, den - 1)
        value = Fraction(num, den)
        if value != HALF:
            return value


def random_irrational_angle(rng: random.Random, radicand: int = 2) -> ExactReal:
    """A quadratic irrational in (0,1) \\ {1/2}."""
    while True:
        base = Fraction(rng.randint(1, 19), 20)
        coeff = Fraction(rng.choice([-1, 1]), rng.randint(8, 40))
        angle = ExactReal(base, coeff, radicand)
        if 0 < angle < 1 and angle != HALF:
            return angle


def _random_angle(rng: random.Random, allow_rational: bool) -> ExactReal:
    if allow_rational and rng.random() < 0.5:
        return as_exact(random_rational_in_unit(rng))
    return random_irrational_angle(rng)


def random_normal_form(
    rng: random.Random,
    max_blocks: int = 2,
    max_angles: int = 2,
    allow_rational_angles: bool = True,
) -> NormalFormDecomposition:
    counts = {
        key: rng.randint(0, max_blocks)
        for key in ("p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus", "h")
    }
    thetas = sorted(
        (_random_angle(rng, allow_rational_angles) for _ in range(rng.randint(0, max_angles))),
        key=lambda a: (a < HALF, a.rat),
    )
    r_prime = sum(1 for a in thetas if a > HALF)
    alphas = tuple(_random_angle(rng, allow_rational_angles) for _ in range(rng.randint(0, max_angles)))
    betas = tuple(_random_angle(rng, allow_rational_angles) for _ in range(rng.randint(0, max_angles)))
    nf = NormalFormDecomposition(
        **counts,
        r_prime=r_prime,
        thetas=tuple(thetas),
        alphas=alphas,
        betas=betas,
        half_dim=0,
    )
    return NormalFormDecomposition(
        **counts,
        r_prime=r_prime,
        thetas=tuple(thetas),
        alphas=alphas,
        betas=betas,
        half_dim=nf.block_total(),
    )


def random_geodesic_model(
    rng: random.Random,
    orientable: bool | None = None,
    allow_rational_angles: bool = True,
) -> GeodesicModel:
    if orientable is None:
        orientable = rng.random() < 0.5
    while True:
        nf = random_normal_form(rng, allow_rational_angles=allow_rational_angles)
        if nf.half_dim >= 1:
            break
    dim = nf.half_dim + 1
    model = GeodesicModel(
        nf=nf,
        ind1=rng.randint(0, 6),
        null1=0,
        dim=dim,
        orientable=orientable,
        type_numbers=(),
    )
    null1 = model.expected_null1()
    if null1 < 0:
        # odd-dimensional non-orientable models need a minus-one block
        nf2 = NormalFormDecomposition(
            p_minus=nf.p_minus, p_zero=nf.p_zero, p_plus=nf.p_plus,
            q_minus=nf.q_minus + 1, q_zero=nf.q_zero, q_plus=nf.q_plus,
            h=nf.h, r_prime=nf.r_prime, thetas=nf.thetas, alphas=nf.alphas,
            betas=nf.betas, half_dim=nf.half_dim + 1,
        )
        model = GeodesicModel(
            nf=nf2, ind1=model.ind1, null1=0, dim=nf2.half_dim + 1,
            orientable=orientable, type_numbers=(),
        )
        null1 = model.expected_null1()
    return GeodesicModel(
        nf=model.nf,
        ind1=model.ind1,
        null1=null1,
        dim=model.dim,
        orientable=orientable,
        type_numbers=(),
    )


def random_rank_one_model(
    rng: random.Random,
    parity: str = "odd",
    max_p: int = 3,
    max_den: int = 12,
) -> Rank1Model:
    """A model satisfying the exact offset-sum target, with generator
    theta = (rational) + sqrt(2)/(small integer)."""
    if parity == "odd":
        n = rng.randint(1, 4)
        k = rng.randint(2, 2 * n) if n > 1 else 2
    elif parity == "even":
        half = rng.randint(2, 3)
        n = 2 * half - 1
        k = 2 * rng.randint(2, min(2 * half - 1, 3))
    else:
        raise ValueError(f"unknown parity {parity!r}")
    target = Fraction(k, 2) + Fraction(n, 2 * (n + 1))
    while True:
        p = [rng.choice([v for v in range(-max_p, max_p + 1) if v]) for _ in range(k - 1)]
        last = -sum(p)
        if last == 0 or abs(last) > max_p:
            continue
        p.append(last)
        xi = [Fraction(rng.randint(0, max_den - 1), max_den) for _ in range(k - 1)]
        tail = target - sum(xi, Fraction(0))
        if not 0 <= tail < 1:
            continue
        xi.append(tail)
        theta = ExactReal(Fraction(rng.randint(0, 3)), Fraction(1, rng.randint(2, 9)), 2)
        return Rank1Model(n, k, theta, tuple(p), tuple(xi))


def random_balanced_system(
    rng: random.Random,
    max_k: int = 6,
    max_p: int = 5,
    max_den: int = 12,
) -> IrrationalSystem:
    """A rank-1 system with zero coefficient sum and an offset sum
    avoiding 0 and 1/2 mod 1."""
    while True:
        k = rng.randint(2, max_k)
        p = [rng.choice([v for v in range(-max_p, max_p + 1) if v]) for _ in range(k - 1)]
        last = -sum(p)
        if last == 0 or abs(last) > max_p:
            continue
        p.append(last)
        xi = [
            Fraction(rng.randint(0, den - 1), den)
            for den in (rng.randint(1, max_den) for _ in range(k))
        ]
        total = sum(xi, Fraction(0))
        total -= int(total)
        if total == 0 or total == HALF:
            continue
        return IrrationalSystem.rank_one(p, xi)
