import functools
import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from jumploci.exactalg import canonicalize
from jumploci.geometry import named_config, random_config
from jumploci.interp import InterpProblem, raw_determinant

settings.register_profile(
    "repo", max_examples=50, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def general(n, seed=1, bound=50):
    return random_config(n, seed, bound)


@functools.lru_cache(maxsize=None)
def named(name, seed=0):
    return named_config(name, seed)


@functools.lru_cache(maxsize=None)
def det_of(cfg, d, m, algorithm="interpolation"):
    """Canonical determinant, cached per (config, d, m, algorithm)."""
    return canonicalize(raw_determinant(InterpProblem(d, m, cfg.points), algorithm))


def load_schema(name):
    text = resources.files("jumploci").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def naive_rank_oracle(rows):
    """Row echelon form by repeated first-nonzero pivoting, written independently of the library."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col, ncols = 0, 0, len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot_rows = [i for i in range(rank, len(m)) if m[i][col] != 0]
        if not pivot_rows:
            col += 1
            continue
        i = pivot_rows[0]
        m[rank], m[i] = m[i], m[rank]
        for k in range(rank + 1, len(m)):
            f = m[k][col] / m[rank][col]
            m[k] = [a - f * b for a, b in zip(m[k], m[rank])]
        rank += 1
        col += 1
    return rank


# -- one summary line per acceptance criterion --------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        prev = _CRITERIA.get(n, (True, 0.0, item.function.__doc__ or ""))
        ok = prev[0] and rep.outcome == "passed"
        _CRITERIA[n] = (ok, prev[1] + rep.duration, prev[2])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, secs, doc = _CRITERIA[n]
        title = doc.strip().splitlines()[0] if doc.strip() else ""
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:6.1f} s)  {title}")
