"""Exhaustive and seeded sweeps behind ``torti selftest`` and the acceptance tests.

Every sweep returns a ``SweepResult``; nothing here raises on a failed
identity, the failure is recorded and the sweep moves on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Iterator

from .bridge import alexander_bridge, alexander_bridge_oracle, verify_structure
from .cfrac import (
    Rational,
    canonical_decomposition,
    dual,
    dual_by_blocks,
    evaluate,
    expand_even,
    linking_number,
)
from .errors import TortiError
from .knot import (
    TortiKnot,
    alexander_knot,
    classify_genus_one,
    degree_formula,
    gamma_series,
    genus,
    invariant_report,
    is_unknot,
    reduce,
)
from .polynomial import equal_up_to_units

MAX_RECORDED = 20


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    n_failed: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.n_failed == 0

    def fail(self, msg: str) -> None:
        self.n_failed += 1
        if len(self.failures) < MAX_RECORDED:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.n_failed} failed" if self.n_failed else ""
        return f"{status} {self.name}: {self.checked} checked{extra}"


def valid_pairs(max_two_alpha: int, positive_only: bool = False) -> Iterator[tuple[int, int]]:
    """All ``(2alpha, beta)`` with ``2alpha <= max_two_alpha``, in a fixed order."""
    for ta in range(2, max_two_alpha + 1, 2):
        lo = 1 if positive_only else -ta + 1
        for b in range(lo, ta, 2):
            if gcd(b, ta) == 1:
                yield ta, b


def random_pairs(samples: int, max_two_alpha: int, seed: int) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        ta = 2 * rng.randint(1, max_two_alpha // 2)
        b = rng.randrange(-ta + 1, ta, 2)
        if gcd(b, ta) == 1:
            out.append((ta, b))
    return out


def _guard(res: SweepResult, label, fn: Callable[[], None]) -> None:
    res.checked += 1
    try:
        fn()
    except TortiError as exc:
        res.fail(f"{label}: {type(exc).__name__}: {exc}")


def bridge_sweep(pairs: Iterable[tuple[int, int]], name: str = "bridge oracle") -> SweepResult:
    """Recursion vs Fox oracle, plus the structural coefficient identities."""
    res = SweepResult(name)
    for ta, b in pairs:
        def one(ta=ta, b=b):
            cf = expand_even(Rational(b, ta))
            p = alexander_bridge(cf)
            if not equal_up_to_units(p, alexander_bridge_oracle(ta, b)):
                res.fail(f"B({ta},{b}): recursion and Fox oracle disagree")
                return
            rep = verify_structure(p, canonical_decomposition(cf), ta // 2)
            if not rep.ok:
                res.fail(f"B({ta},{b}): {', '.join(rep.failures())}")
        _guard(res, f"B({ta},{b})", one)
    return res


def dual_sweep(pairs: Iterable[tuple[int, int]]) -> SweepResult:
    res = SweepResult("dual fraction")
    for ta, b in pairs:
        def one(ta=ta, b=b):
            cf = expand_even(Rational(b, ta))
            d = dual(cf)
            if b > 0 and evaluate(d) != Rational(ta - b, ta):
                res.fail(f"{b}/{ta}: dual evaluates to {evaluate(d)}")
            if dual(d) != cf:
                res.fail(f"{b}/{ta}: dual is not an involution")
            cd = canonical_decomposition(cf)
            if len(d) != 2 * (cd.lam - cd.rho) - 1:
                res.fail(f"{b}/{ta}: dual length {len(d)} != 2(lambda - rho) - 1")
            if dual_by_blocks(cf) != d:
                res.fail(f"{b}/{ta}: block-wise dual differs from the graph dual")
        _guard(res, f"{b}/{ta}", one)
    return res


def gamma_sweep(pairs: Iterable[tuple[int, int]], r_values=(1, 2, 3)) -> SweepResult:
    """All linking-number-zero pairs: symmetry, Gamma(1) = 0, support, extreme value."""
    res = SweepResult("Gamma series")
    fallback = 0
    for ta, b in pairs:
        if linking_number(expand_even(Rational(b, ta))) != 0:
            continue

        def one(ta=ta, b=b):
            nonlocal fallback
            gs = gamma_series(ta, b)
            g = gs.coeffs
            bound = gs.extreme_height
            if g.evaluate(1) != 0:
                res.fail(f"{b}/{ta}: Gamma(1) = {g.evaluate(1)}")
            if any(g.coeff(-e) != c for e, c in g.items()):
                res.fail(f"{b}/{ta}: Gamma is not symmetric")
            if not g.is_zero() and (g.max_exp() > bound or g.min_exp() < -bound):
                res.fail(f"{b}/{ta}: Gamma support exceeds {bound}")
            if g.coeff(bound) != gs.extreme_coefficient:
                res.fail(f"{b}/{ta}: extreme coefficient {g.coeff(bound)} != {gs.extreme_coefficient}")
            if not gs.parity_agrees:
                res.fail(f"{b}/{ta}: recursion sign parity disagrees with the graph")
            if not gs.sign_pinned:
                fallback += 1
            for r in r_values:
                d = alexander_knot(TortiKnot(ta, b, r)).degree()
                if d > 2 * bound:
                    res.fail(f"K({ta},{b}|{r}): degree {d} > 2 * {bound}")
                if d > 2 * genus(TortiKnot(ta, b, r)):
                    res.fail(f"K({ta},{b}|{r}): degree {d} > 2 * genus")
        _guard(res, f"{b}/{ta}", one)
    res.notes.append(f"{fallback} pairs with a zero predicted extreme coefficient (sign not pinned)")
    return res


def knot_sweep(max_two_alpha: int, r_values=range(1, 6)) -> SweepResult:
    """Unknot detection and the degree formula, with every report cross-check."""
    res = SweepResult("unknot and degree")
    for ta, b in valid_pairs(max_two_alpha):
        for r in r_values:
            k = TortiKnot(ta, b, r)

            def one(k=k):
                rep = invariant_report(k)
                expected = ta == 2 or (rep.normalized_knot.two_alpha, rep.normalized_knot.beta,
                                       rep.normalized_knot.r) == (4, 3, 1)
                if is_unknot(k) != expected:
                    res.fail(f"{k}: is_unknot = {is_unknot(k)}")
                if ta != 2 and rep.ell >= 1:
                    want = degree_formula(rep.lam, rep.rho, rep.ell, rep.normalized_knot.r)
                    if rep.degree != want:
                        res.fail(f"{k}: degree {rep.degree} != formula {want}")
            _guard(res, str(k), one)
    return res


def genus_one_sweep(max_two_alpha: int, r_values=range(1, 7)) -> SweepResult:
    res = SweepResult("genus-one classifier")
    for ta, b in valid_pairs(max_two_alpha):
        for r in r_values:
            k = TortiKnot(ta, b, r)

            def one(k=k):
                cls = classify_genus_one(k)
                g = genus(k)
                if cls.is_none == (g == 1):
                    res.fail(f"{k}: class {cls.case} but genus {g}")
            _guard(res, str(k), one)
    return res


def reduce_sweep(max_two_alpha: int, r_values=(-3, -2, -1, 1, 2, 3)) -> SweepResult:
    """Reduction keeps the invariants and lands in the normal form."""
    res = SweepResult("reduction")
    for ta, b in valid_pairs(max_two_alpha):
        for r in r_values:
            k = TortiKnot(ta, b, r)

            def one(k=k):
                red, _ = reduce(k)
                if red.ell < 0 or red.r <= 0:
                    res.fail(f"{k}: reduced to {red}")
                if alexander_knot(red) != alexander_knot(k) or genus(red) != genus(k):
                    res.fail(f"{k}: invariants changed under reduction")
            _guard(res, str(k), one)
    return res


def run_selftest(alpha_max: int = 400, samples: int = 0, seed: int = 0) -> list[SweepResult]:
    """The selftest battery; ``alpha_max`` bounds ``2alpha``."""
    if alpha_max < 2:
        raise ValueError("alpha_max must be at least 2")
    sweep_max = min(alpha_max, 400)
    results = [bridge_sweep(valid_pairs(sweep_max), f"bridge oracle, 2alpha <= {sweep_max}")]
    if samples:
        pairs = random_pairs(samples, alpha_max, seed)
        results.append(bridge_sweep(pairs, f"bridge oracle, {samples} random pairs (seed {seed})"))
    results.append(dual_sweep(valid_pairs(sweep_max)))
    results.append(gamma_sweep(valid_pairs(sweep_max)))
    results.append(knot_sweep(min(alpha_max, 100)))
    results.append(genus_one_sweep(min(alpha_max, 120)))
    return results
