import sympy as sp
from hypothesis import settings

from charslope.laurent import LaurentPoly

settings.register_profile("ci", deadline=None, max_examples=100)
settings.load_profile("ci")

T = sp.Symbol("t", positive=True)


def to_sympy(poly: LaurentPoly) -> sp.Expr:
    """Independent symbolic form of a Laurent polynomial (doubled exponents halved)."""
    return sp.Add(*[c * T ** sp.Rational(e, 2) for e, c in poly.items()])


def sympy_derivatives_at_one(poly: LaurentPoly):
    # term by term: differentiating the full sum symbolically is far slower
    terms = [c * T ** sp.Rational(e, 2) for e, c in poly.items()]
    return tuple(sp.Rational(sum(sp.diff(m, T, k).subs(T, 1) for m in terms)) for k in (0, 1, 2))


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        if _ACCEPTANCE.get(name) != "FAIL":
            _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        number = int(name.split("_")[2])
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number:2d} {_ACCEPTANCE[name]}: {label}")
