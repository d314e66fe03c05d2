import pytest
from hypothesis import HealthCheck, settings

from srdtree import EdgeAttrs, build_tree

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_configure(config):
    config._criterion_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def broom():
    """Root s, inner node v1, leaves t1 and t2; the worked example tree.

    Leaf counts are (2, 1, 1), the starting distance sum is 4, the full
    raise costs F are (2, 2, 4) and the full gains S are (4, 1, 4).
    """
    edges = [(1, "s", "v1"), (2, "v1", "t1"), (3, "v1", "t2")]
    attrs = EdgeAttrs(
        w={1: 1.0, 2: 1.0, 3: 1.0},
        u={1: 3.0, 2: 2.0, 3: 5.0},
        c={1: 1.0, 2: 2.0, 3: 1.0},
    )
    return build_tree(edges, attrs), attrs


@pytest.fixture
def star4():
    """Four leaves hanging off the root, unit slack, costs 4..1."""
    edges = [(i, "s", f"t{i}") for i in range(1, 5)]
    attrs = EdgeAttrs(
        w={i: 0.0 for i in range(1, 5)},
        u={i: 1.0 for i in range(1, 5)},
        c={1: 4.0, 2: 3.0, 3: 2.0, 4: 1.0},
    )
    return build_tree(edges, attrs), attrs
