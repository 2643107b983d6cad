from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from liectrl.pauli import PauliExpr

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def pauli_exprs(draw, n: int | None = None, max_terms: int = 4, allow_zero: bool = False):
    """Small random Pauli expressions with rational coefficients."""
    if n is None:
        n = draw(st.integers(1, 3))
    size = draw(st.integers(0 if allow_zero else 1, min(max_terms, 4**n - 1)))
    codes = draw(st.lists(st.integers(1, 4**n - 1), min_size=size, max_size=size, unique=True))
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
            min_size=size,
            max_size=size,
        )
    )
    return PauliExpr(n, dict(zip(codes, coeffs)))


@st.composite
def expr_tuples(draw, k: int, max_terms: int = 4):
    """``k`` expressions on a shared qubit count."""
    n = draw(st.integers(1, 3))
    return tuple(draw(pauli_exprs(n=n, max_terms=max_terms)) for _ in range(k))


def frac(x) -> Fraction:
    return Fraction(x)


CRITERION_OUTCOMES: dict[int, list[tuple[str, bool]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            CRITERION_OUTCOMES.setdefault(value, []).append((report.nodeid, report.passed))


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker and call.when == "setup":
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_OUTCOMES):
        outcomes = CRITERION_OUTCOMES[number]
        status = "PASS" if all(ok for _, ok in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status} ({len(outcomes)} checks)")
