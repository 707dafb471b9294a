"""The ``validate`` command: law suites plus oracle checks on bundled models."""
from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor

from . import oracle
from .datasets import CHILD_SUBNETWORK, child_standin, two_coins
from .engine import solve_exact
from .laws import SUITES, run_suite


def _suite(args):
    name, count, seed = args
    return name, run_suite(name, count, seed)


def bundled_checks() -> list:
    failures = []
    coins = two_coins()
    for q in ("coin1", "coin2"):
        got = solve_exact(coins.factors, [q])
        if got.table != oracle.brute_force_marginal(coins.factors, [q]):
            failures.append(f"two-coins marginal of {q}")
    sub = child_standin().subnetwork(CHILD_SUBNETWORK)
    for q in CHILD_SUBNETWORK[:3]:
        got = solve_exact(sub.factors, [q])
        if got.table != oracle.brute_force_marginal(sub.factors, [q]):
            failures.append(f"child subnetwork marginal of {q}")
    return failures


def validate(seed: int = 0, count: int = 50, workers: int = 1, out=sys.stdout) -> bool:
    jobs = [(name, count, seed) for name in SUITES]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_suite, jobs))
    else:
        results = [_suite(j) for j in jobs]
    ok = True
    for name, failures in results:
        status = "PASS" if not failures else "FAIL"
        print(f"{status} {name} ({count} instances)", file=out)
        for f in failures[:5]:
            print(f"    {f}", file=out)
        ok &= not failures
    failures = bundled_checks()
    print(f"{'PASS' if not failures else 'FAIL'} bundled models against dense oracle", file=out)
    for f in failures:
        print(f"    {f}", file=out)
    return ok and not failures
