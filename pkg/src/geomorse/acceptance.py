"""Acceptance criteria, runnable both from pytest and from the CLI
``selftest`` subcommand.  Each criterion returns a result record with a
pass flag and a human-readable detail string; randomized criteria use
fixed seeds so every run checks the same inputs.
"""

from __future__ import annotations

import io
import json
import random
import tempfile
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exactnum import (
    ExactReal,
    as_exact,
    ceil_int,
    floor_int,
    frac,
    half_identities_check,
    phi,
)
from .homology import average_betti, betti, betti_series_oracle, partial_alternating_average, resonance_check
from .intervals import Rank1Model, index_direct, index_via_interval, obstruction_scenario
from .iteration import (
    index_minus1,
    index_minus1_direct,
    nullity_minus1,
    nullity_minus1_direct,
)
from .normalform import GeodesicModel, NormalFormDecomposition, splitting_consistency
from .sampling import (
    random_balanced_system,
    random_normal_form,
    random_rank_one_model,
)
from .systems import classify, dense_eta_grid_max, effective_difference_number

__all__ = ["CriterionResult", "run_all", "CRITERIA"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str


EXAMPLE_SYSTEM = {"P": [[-1], [-2], [3]], "xi": ["5/6", "1/3", "1/2"]}
COUNTEREXAMPLE_SYSTEM = {"P": [[-1], [-1], [2]], "xi": ["1/2", "0", "0"]}

_EXPECTED_TRACE = [
    # multisets of (coefficient, offset) after each reduction step
    [(-1, "0"), (-2, "2/3"), (3, "0")],
    [(-1, "0"), (-2, "2/3"), (1, "0"), (1, "1/3"), (1, "2/3")],
    [(-1, "2/3"), (-2, "0"), (1, "1/3"), (1, "2/3"), (1, "0")],
    [(-1, "2/3"), (-1, "0"), (-1, "1/2"), (1, "1/3"), (1, "2/3"), (1, "0")],
    [(-1, "1/2"), (1, "2/3")],
]


def _run_cli(argv: list[str]) -> tuple[int, str]:
    from . import cli

    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli.main(argv)
    return code, buffer.getvalue()


def _system_multiset(entry: dict) -> list[tuple[int, Fraction]]:
    return sorted(
        (row[0], Fraction(x)) for row, x in zip(entry["P"], entry["xi"])
    )


def criterion_1() -> CriterionResult:
    name = "worked-example reduction trace and difference number"
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "example.json"
        path.write_text(json.dumps(EXAMPLE_SYSTEM))
        start = time.perf_counter()
        code_r, out_r = _run_cli(["reduce", "--system", str(path), "--trace", "--format", "json"])
        code_e, out_e = _run_cli(["edn", "--system", str(path), "--format", "json"])
        elapsed = time.perf_counter() - start
    if code_r != 0 or code_e != 0:
        return CriterionResult(1, name, False, f"exit codes {code_r}, {code_e}")
    trace = json.loads(out_r)
    produced = [_system_multiset(step["system"]) for step in trace["steps"]]
    expected = [
        sorted((c, Fraction(x)) for c, x in stage) for stage in _EXPECTED_TRACE
    ]
    if produced != expected:
        return CriterionResult(1, name, False, f"trace mismatch: {produced}")
    edn = json.loads(out_e)
    if edn["value"] != 1:
        return CriterionResult(1, name, False, f"difference number {edn['value']} != 1")
    from .systems import IrrationalSystem

    witness = Fraction(edn["witness"])
    split = classify(IrrationalSystem.from_json_dict(EXAMPLE_SYSTEM), witness)
    if split.absolute_difference != 1:
        return CriterionResult(1, name, False, f"witness {witness} does not realize 1")
    if elapsed >= 1.0:
        return CriterionResult(1, name, False, f"runtime {elapsed:.3f}s >= 1s")
    return CriterionResult(1, name, True, f"trace and witness verified in {elapsed:.3f}s")


def criterion_2() -> CriterionResult:
    name = "counterexample has difference number 0 with flagged condition"
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "counterexample.json"
        path.write_text(json.dumps(COUNTEREXAMPLE_SYSTEM))
        code, out = _run_cli(["edn", "--system", str(path), "--format", "json"])
    if code != 0:
        return CriterionResult(2, name, False, f"exit code {code}")
    payload = json.loads(out)
    if payload["value"] != 0:
        return CriterionResult(2, name, False, f"difference number {payload['value']} != 0")
    violations = payload["conditions"]["violations"]
    if payload["conditions"]["satisfied"] or not any("offset sum" in v for v in violations):
        return CriterionResult(2, name, False, f"offset-sum violation not reported: {violations}")
    return CriterionResult(2, name, True, "value 0 and offset-sum violation reported")


def criterion_3() -> CriterionResult:
    name = "difference number >= 1 on 200 balanced systems; grid oracle agrees on 20"
    rng = random.Random(20230)
    start = time.perf_counter()
    systems = [random_balanced_system(rng) for _ in range(200)]
    for i, system in enumerate(systems):
        result = effective_difference_number(system)
        if result.value < 1:
            return CriterionResult(3, name, False, f"system {i} has difference number 0")
    for i, system in enumerate(systems[:20]):
        grid = dense_eta_grid_max(system)
        candidate = effective_difference_number(system).value
        if grid != candidate:
            return CriterionResult(
                3, name, False, f"system {i}: grid max {grid} != candidate max {candidate}"
            )
    elapsed = time.perf_counter() - start
    if elapsed >= 30.0:
        return CriterionResult(3, name, False, f"runtime {elapsed:.1f}s >= 30s")
    return CriterionResult(3, name, True, f"200 systems checked in {elapsed:.1f}s")


def criterion_4() -> CriterionResult:
    name = "halving identities and splitting consistency on 100 normal forms"
    rng = random.Random(20231)
    for i in range(100):
        nf = random_normal_form(rng)
        i1 = rng.randint(-3, 6)
        nu1 = nf.eigenvalue_one_count()
        for m in range(1, 51):
            if index_minus1(nf, i1, m) != index_minus1_direct(nf, i1, m):
                return CriterionResult(4, name, False, f"index halving fails: nf {i}, m = {m}")
            if nullity_minus1(nf, nu1, m) != nullity_minus1_direct(nf, m):
                return CriterionResult(4, name, False, f"nullity halving fails: nf {i}, m = {m}")
        if not splitting_consistency(nf, i1, index_minus1(nf, i1, 1)):
            return CriterionResult(4, name, False, f"splitting fails on nf {i}")
    return CriterionResult(4, name, True, "100 normal forms, m <= 50")


def criterion_5() -> CriterionResult:
    name = "Betti tables match the series oracle; averages converge"
    for n in (2, 3, 4, 5, 7, 8):
        series = betti_series_oracle(n, 200)
        closed = [betti(n, q) for q in range(201)]
        if series != closed:
            return CriterionResult(5, name, False, f"series mismatch at n = {n}")
    targets = {2: Fraction(1), 3: Fraction(1), 4: Fraction(2, 3), 5: Fraction(3, 4)}
    for n, target in targets.items():
        if average_betti(n) != target:
            return CriterionResult(5, name, False, f"average for n = {n} is not {target}")
        drift = abs(partial_alternating_average(n, 200) - target)
        if drift > Fraction(5, 200):
            return CriterionResult(5, name, False, f"partial average off by {drift} at n = {n}")
    return CriterionResult(5, name, True, "n in {2,3,4,5,7,8} to degree 200")


def criterion_6() -> CriterionResult:
    name = "interval route equals the direct index formula"
    rng = random.Random(20232)
    for parity in ("odd", "even"):
        for i in range(20):
            model = random_rank_one_model(rng, parity=parity)
            for l in range(0, 51):
                for L in range(-20, 21):
                    m = 2 * (model.n + 1) * l + 2 * L + 1
                    if m < 1:
                        continue
                    direct = index_direct(model, m)
                    via = index_via_interval(model, l, L)
                    if direct != via:
                        return CriterionResult(
                            6, name, False,
                            f"{parity} model {i}: mismatch at l = {l}, L = {L}",
                        )
    return CriterionResult(6, name, True, "20 models per parity, l <= 50, |L| <= 20")


def criterion_7() -> CriterionResult:
    name = "index gap bound holds exhaustively"
    rng = random.Random(20233)
    for parity in ("odd", "even"):
        for i in range(20):
            model = random_rank_one_model(rng, parity=parity)
            n = model.n
            step = 1 if parity == "odd" else 2
            indices = {
                m: index_direct(model, m) for m in range(1, 501, step)
            }
            for l in range(1, 31):
                for m, idx in indices.items():
                    if abs(m - 2 * (n + 1) * l) > 4 * (n + 1) and abs(idx - 2 * n * l) <= 2 * n:
                        return CriterionResult(
                            7, name, False,
                            f"{parity} model {i}: bound fails at l = {l}, m = {m}",
                        )
    return CriterionResult(7, name, True, "20 models per parity, l <= 30, m <= 500")


def _bumpy_resonance_model(d: int, perturb: Fraction = Fraction(0)) -> GeodesicModel:
    # two rotation angles with sum tuned so the mean index is (d-1)/(d+1),
    # padded to half_dim = d - 1 by trivial 4x4 blocks
    target = Fraction(d - 1, d + 1)
    half_sum = (target + 2) / 2 + perturb
    split = ExactReal(Fraction(0), Fraction(1, 100), 2)
    thetas = (as_exact(half_sum / 2) + split, as_exact(half_sum / 2) - split)
    pad = (d - 1 - 2) // 2
    nf = NormalFormDecomposition(
        r_prime=sum(1 for t in thetas if t > Fraction(1, 2)),
        thetas=thetas,
        alphas=tuple(ExactReal(Fraction(0), Fraction(1, 2), 2) for _ in range(pad)),
        half_dim=d - 1,
    )
    return GeodesicModel(
        nf=nf, ind1=0, null1=0, dim=d, orientable=True,
        type_numbers=((1, 0, 1),), period=2,
    )


def criterion_8() -> CriterionResult:
    name = "resonance residual vanishes for the tuned bumpy model"
    for d in (3, 5):
        model = _bumpy_resonance_model(d)
        report = resonance_check([model], d)
        if not report.exact_zero:
            return CriterionResult(8, name, False, f"d = {d}: residual {report.residual} != 0")
        if report.bumpy_residual is None or report.bumpy_residual.sign() != 0:
            return CriterionResult(8, name, False, f"d = {d}: bumpy-form residual nonzero")
        perturbed = _bumpy_resonance_model(d, perturb=Fraction(1, 100))
        report_p = resonance_check([perturbed], d)
        if report_p.exact_zero:
            return CriterionResult(8, name, False, f"d = {d}: perturbed residual is zero")
    return CriterionResult(8, name, True, "d in {3, 5}, both identity forms, perturbation detected")


RP3_MODEL = Rank1Model(
    n=1,
    k=2,
    theta=ExactReal(Fraction(-1), Fraction(1), 2),
    p=(1, -1),
    xi=(Fraction(3, 4), Fraction(1, 2)),
)


def criterion_9() -> CriterionResult:
    name = "obstruction scenario finds a conflicting pair"
    report = obstruction_scenario(RP3_MODEL, budget=100_000)
    if not report.routes_agree:
        return CriterionResult(9, name, False, "index routes disagree at a checked iterate")
    if report.i_prime == report.i_double_prime:
        return CriterionResult(9, name, False, "pair does not separate intervals")
    s1, s2 = report.counts
    if s2 < s1 + 1:
        return CriterionResult(9, name, False, f"counts {s1}, {s2} show no conflict")
    if not report.conflict:
        return CriterionResult(9, name, False, "no conflict reported")
    return CriterionResult(
        9, name, True,
        f"pair (l1, l2) = ({report.l1}, {report.l2}), counts {s1} vs {s2}, "
        f"{len(report.iterate_rows)} route checks",
    )


def criterion_10() -> CriterionResult:
    name = "floor/ceiling/fractional laws and half identities"
    rng = random.Random(20234)
    samples: list[ExactReal] = []
    for _ in range(1000):
        samples.append(as_exact(Fraction(rng.randint(-400, 400), rng.randint(1, 40))))
    for _ in range(1000):
        samples.append(
            ExactReal(
                Fraction(rng.randint(-40, 40), rng.randint(1, 12)),
                Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 12)),
                rng.choice([2, 3, 5, 7, 11]),
            )
        )
    for x in samples:
        lo = floor_int(x)
        if not (lo <= x < lo + 1):
            return CriterionResult(10, name, False, f"floor law fails at {x}")
        if ceil_int(x) - lo not in (0, 1):
            return CriterionResult(10, name, False, f"ceiling law fails at {x}")
        if frac(x) + lo != x:
            return CriterionResult(10, name, False, f"fractional law fails at {x}")
        if (phi(x) == 0) != x.is_integer:
            return CriterionResult(10, name, False, f"phi law fails at {x}")
        if half_identities_check(x) != (True, True):
            return CriterionResult(10, name, False, f"half identity fails at {x}")
    return CriterionResult(10, name, True, "1000 rationals and 1000 quadratic irrationals")


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_all() -> list[CriterionResult]:
    return [criterion() for criterion in CRITERIA]
