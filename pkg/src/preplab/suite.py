"""Seeded invariant suites across all modules, runnable from the CLI."""

from __future__ import annotations

import cmath
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import arith, family, lines, prepfind, structure, verify
from .arith import DensePoly, Ring, tpoly
from .instances import (random_line_instance, random_points, random_probe,
                        random_rational, random_starting_points, rng_for)

SCHEMA = "preplab/1"


def _check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def _random_qpoly(rng, deg):
    return DensePoly([random_rational(rng) for _ in range(deg + 1)])


def case_arith(rng):
    p, q, r = (_random_qpoly(rng, rng.randint(0, 6)) for _ in range(3))
    _check((p * q) * r == p * (q * r), "multiplication is not associative")
    _check(p * (q + r) == p * q + p * r, "distributivity fails")
    _check(p(q(r)) == p(q)(r), "composition is not associative")
    _check(arith.loads(arith.dumps(p)) == p, "JSON round trip")
    _check(arith.from_text(arith.to_text(p)) == p, "text round trip")
    big = _random_qpoly(rng, 40), _random_qpoly(rng, 40)
    _check(arith.poly_mul(*big) == arith.poly_mul(*big, threshold=10 ** 9),
           "Karatsuba and schoolbook disagree")


def case_lines(rng):
    inst = random_line_instance(rng, 3, 5)
    line = lines.build_line(inst.c, inst.sigma, inst.d)
    g = family.specialize_line(family.Family(inst.d, inst.m), line)
    A, B = lines.decompose_AB(g)
    _check(A == lines.vanishing_poly(inst.c), "A differs from the vanishing polynomial")
    _check(B == lines.lagrange_B(inst.c, inst.sigma, inst.d), "B differs from the Lagrange form")
    _check(line.alpha[0] == -sum(inst.c), "alpha_2 is not minus the sum of base points")
    for i, ci in enumerate(inst.c, 1):
        image = arith.bipoly_orbit_step(g, tpoly([ci]))
        _check(image == tpoly([inst.c[inst.sigma(i) - 1]]), f"g_t(c_{i}) is not c_sigma({i})")


def case_family(rng):
    inst = random_line_instance(rng, 3, 5)
    line = lines.build_line(inst.c, inst.sigma, inst.d)
    g = family.specialize_line(family.Family(inst.d, inst.m), line)
    probe = random_probe(rng, inst.c)
    rep = family.check_degree_law(g, lines.vanishing_poly(inst.c), probe, 4)
    _check(rep.holds, f"degrees {rep.degrees} != {rep.expected}")


def case_expansion(rng):
    d = rng.choice((4, 5))
    m = rng.randint(3, d - 1)
    c = random_points(rng, m - 1)
    sigma = [rng.randint(1, m - 1) for _ in range(m - 1)]
    probe = random_probe(rng, c) if rng.random() < 0.8 else rng.choice(c)
    for n in (2, 3):
        for fn in (verify.check_expansion_bound, verify.check_refined_expansion):
            rep = fn(c, sigma, d, probe, n)
            _check(rep.passed, f"{fn.__name__}: deg {rep.lhs_deg} > {rep.bound}")


def case_obstruction(rng):
    m = rng.choice((3, 4))
    d = rng.randint(m + 1, 5)
    pts = random_starting_points(rng, m, equal_probes=rng.random() < 0.2)
    rep = verify.obstruction_report(pts, d)
    _check(rep.value == rep.closed_form_value, "D differs from the closed form")
    _check((rep.value == 0) == (pts.cm == pts.cm1), "D vanishes off the diagonal")
    _check(verify.xi_ratio(pts) * rep.a_cm == rep.a_cm1, "xi * A(c_m) != A(c_m+1)")
    pts = random_starting_points(rng, m)
    br = verify.check_md1_branch(pts, m + 1, [rng.randint(1, m - 1) for _ in range(m - 1)])
    _check(br.rearrangement_exact, "the m = d - 1 rearrangement is not exact")


def case_structure(rng):
    a, b = rng.randint(1, 5), rng.randint(1, 5)
    T = structure.chebyshev
    _check(T(a)(T(b)) == T(a * b), f"T_{a} o T_{b} != T_{a * b}")
    inst = random_line_instance(rng, 3, 5)
    g = family.specialize_line(family.Family(inst.d, inst.m),
                               lines.build_line(inst.c, inst.sigma, inst.d))
    found = structure.linear_commutant(g, 1)
    _check(len(found) == 1 and found[0].is_identity(), f"commutant {found}")
    f = DensePoly([random_rational(rng) for _ in range(inst.d)] + [1])
    mu, ghat = structure.to_normal_form(f)
    _check(ghat.is_normal_form(), "normal form is not normalized")
    _check(structure.to_normal_form(ghat)[1] == ghat, "normal form is not idempotent")
    _check(mu.conjugate(f) == ghat, "witness does not conjugate")


def case_prepfind(rng):
    n = rng.randint(1, 16)
    rts = [cmath.rect(rng.random() ** 0.5, rng.uniform(0, 2 * cmath.pi)) for _ in range(n)]
    lead = cmath.rect(rng.uniform(0.5, 1.0), rng.uniform(0, 2 * cmath.pi))
    p = DensePoly.from_roots(rts, Ring.C).scale(lead)
    found = prepfind.roots(p)
    back = DensePoly.from_roots(found, Ring.C).scale(lead)
    scale = max(abs(x) for x in p.coeffs)
    err = max(abs(x - y) for x, y in zip(back.coeffs, p.coeffs)) / scale
    _check(err <= 1e-6, f"reconstruction error {err:.3g}")


@dataclass(frozen=True)
class Suite:
    name: str
    case: object
    cases: int


SUITES = {s.name: s for s in (
    Suite("arith", case_arith, 50),
    Suite("lines", case_lines, 200),
    Suite("family", case_family, 50),
    Suite("expansion", case_expansion, 30),
    Suite("obstruction", case_obstruction, 200),
    Suite("structure", case_structure, 50),
    Suite("prepfind", case_prepfind, 50),
)}


@dataclass
class SuiteConfig:
    seed: int = 0
    cases: int | None = None
    suites: list | None = None
    inject_fault: bool = False
    workers: int = 1

    def selected(self):
        names = list(SUITES) if not self.suites else list(self.suites)
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise KeyError(f"unknown suite(s) {unknown}; known: {sorted(SUITES)}")
        return names


@dataclass
class SuiteSummary:
    suite: str
    cases: int = 0
    failures: int = 0
    elapsed: float = 0.0
    messages: list = field(default_factory=list)

    def merge(self, ok, msg, elapsed):
        self.cases += 1
        self.elapsed += elapsed
        if not ok:
            self.failures += 1
            if len(self.messages) < 5:
                self.messages.append(msg)

    def to_json(self):
        return {"schema": SCHEMA, "suite": self.suite, "cases": self.cases,
                "failures": self.failures, "elapsed": round(self.elapsed, 6),
                "messages": self.messages}


def _injected(rng):
    raise AssertionError("injected fault")


def run_case(job):
    """``(suite, seed, index, fault)`` -> ``(suite, ok, message, seconds)``; pure."""
    name, seed, index, fault = job
    case = _injected if fault else SUITES[name].case
    rng = rng_for(seed, name, index)
    start = time.perf_counter()
    try:
        case(rng)
        ok, msg = True, ""
    except Exception as exc:
        ok = False
        msg = f"case {index}: {type(exc).__name__}: {exc}"
        if not isinstance(exc, AssertionError):
            msg += "\n" + traceback.format_exc(limit=3)
    return name, ok, msg, time.perf_counter() - start


def run_suite(config: SuiteConfig | None = None):
    """Run the selected suites; returns one :class:`SuiteSummary` per suite."""
    config = config or SuiteConfig()
    names = config.selected()
    jobs = []
    for name in names:
        count = SUITES[name].cases if config.cases is None else config.cases
        jobs += [(name, config.seed, i, False) for i in range(count)]
        if config.inject_fault:
            jobs.append((name, config.seed, count, True))
    summaries = {name: SuiteSummary(name) for name in names}
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            results = list(pool.map(run_case, jobs, chunksize=8))
    else:
        results = map(run_case, jobs)
    for name, ok, msg, secs in results:
        summaries[name].merge(ok, msg, secs)
    return [summaries[n] for n in names]


__all__ = ["SUITES", "Suite", "SuiteConfig", "SuiteSummary", "run_suite", "run_case"]
