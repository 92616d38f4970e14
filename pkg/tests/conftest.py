import json
import random
from importlib import resources

import pytest

from toriclcs.cone import build_cone
from toriclcs.errors import EmptyInterior, NotPointed

ATLAS_DIR = resources.files("toriclcs") / "atlas"
ATLAS_NAMES = sorted(p.name[:-5] for p in ATLAS_DIR.iterdir() if p.name.endswith(".json"))


def atlas_spec(name):
    return json.loads((ATLAS_DIR / f"{name}.json").read_text())


def atlas_cone(name):
    spec = atlas_spec(name)
    return build_cone(spec["dim"], spec["normals"])


def random_cone(rng, n, d, lo=-5, hi=5):
    """A valid normalized cone from ``d`` random normals, or None."""
    normals = []
    while len(normals) < d:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            normals.append(v)
    try:
        return build_cone(n, normals, normalize=True)
    except (NotPointed, EmptyInterior):
        return None


def random_cones(seed, count, max_n=3, max_d=6, lo=-5, hi=5, min_n=2):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_n, max_n)
        d = rng.randint(n, max_d)
        c = random_cone(rng, n, d, lo, hi)
        if c is not None:
            out.append(c)
    return out


@pytest.fixture(scope="session")
def atlas():
    return {name: atlas_cone(name) for name in ATLAS_NAMES}


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    prev = _ACCEPTANCE.get(number, (title, "PASS"))
    status = prev[1]
    if rep.failed:
        status = "FAIL"
    elif rep.skipped:
        status = "SKIP" if status == "PASS" else status
    _ACCEPTANCE[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


def random_unimodular(rng, n, steps=6):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
    if rng.random() < 0.5:
        u[0] = [-x for x in u[0]]
    return tuple(tuple(row) for row in u)
