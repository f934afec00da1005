import pytest

from veronese_res.poly import QQ, PrimeField, Ring, parse_poly

GF = PrimeField(32003)


def curve(text, field=QQ):
    return parse_poly(text, Ring.CURVE, field)


def amb(text, field=QQ):
    return parse_poly(text, Ring.AMBIENT, field)


@pytest.fixture(params=[QQ, GF], ids=["QQ", "GF32003"])
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
