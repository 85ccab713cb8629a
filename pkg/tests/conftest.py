import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pinlab.exact_core import ExactMatrix, GaussScalar  # noqa: E402

settings.register_profile("pinlab", deadline=None)
settings.load_profile("pinlab")

FIXTURES = Path(__file__).parent / "fixtures"

small_fraction = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
gauss = st.builds(GaussScalar, small_fraction, small_fraction)


def matrices(n: int):
    return st.lists(st.lists(gauss, min_size=n, max_size=n), min_size=n, max_size=n).map(ExactMatrix)


square_matrix = st.integers(1, 4).flatmap(matrices)


# acceptance summary: test_acceptance records (number, title, passed) here
ACCEPTANCE: list[tuple[int, str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d} {title}")
