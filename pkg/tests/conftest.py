from fractions import Fraction

from hypothesis import strategies as st

from cyclodarboux.poly import Polynomial, VariableContext

XYZ = VariableContext(("x", "y", "z"))

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polynomials(ctx=XYZ, max_exp=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_exp)] * ctx.arity)
    return st.dictionaries(exps, small_rationals, max_size=max_terms).map(
        lambda terms: Polynomial(ctx, terms))


# acceptance verdicts, criterion number -> (passed, seconds, detail)
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.2f} s)  {detail}")
