import pytest
from hypothesis import given

from germlab import ParseError, format_problem, local_ring, parse_problem
from germlab.parse import parse_poly
from germlab.ring import format_poly

from strategies import polys

FINAL = """\
ring x, y, z;
icis: x^3 + y^3 - z^2;
map: x, y, z^3 + x*z + y^2;
"""


def test_final_example_parses():
    pf = parse_problem(FINAL)
    assert pf.ring_vars == ("x", "y", "z")
    assert len(pf.icis) == 1 and len(pf.map) == 3


def test_smooth_source_problem():
    pf = parse_problem("ring x, y;\nmap: x, y^2, x*y;\n")
    assert pf.icis == () and len(pf.map) == 3


def test_constant_term_rejected():
    with pytest.raises(ParseError) as info:
        parse_problem("ring x, y;\nicis: x^2 - y^3 + 1;\n")
    assert info.value.line == 2
    assert "constant term" in str(info.value)


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("ring x, y;\nmap: x, 2y;\n", 2, 10, "implicit multiplication"),
        ("ring x, y;\nmap: x, w^2;\n", 2, 9, "unknown identifier"),
        ("ring x;\n\n  icis: x^2^3;\n", 3, 12, "chained"),
        ("ring x, y;\ntarget X, Y;\nmap: x, y, x*y;\n", 2, 1, "arity"),
        ("ring x, y;\nmap: x, y\n", 2, 10, "missing ';'"),
        ("ring x;\nfoo: x;\n", 2, 1, "unknown statement"),
        ("ring x;\noption speed = 3;\n", 2, 8, "unknown option"),
        ("ring x;\nmap: x/0;\n", 2, None, ""),
    ],
)
def test_diagnostics_carry_position(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_problem(text)
    err = info.value
    assert err.line == line
    if col is not None:
        assert err.col == col
    assert fragment in str(err)
    assert str(err).startswith(f"line {err.line}, col {err.col}:")


def test_decimals_rejected():
    R = local_ring("x")
    with pytest.raises(ParseError):
        parse_poly("0.5*x", R)


def test_poly_syntax():
    R = local_ring("x, y")
    x, y = R.gens()
    assert parse_poly("(x + y)^2 - 2*x*y", R) == x**2 + y**2
    assert parse_poly("x/2 + 3/4*y", R) == x / 2 + y * 3 / 4
    assert parse_poly("-x^2", R) == -(x**2)


R2 = local_ring("x, y")


@given(p=polys(R2, origin=True))
def test_poly_print_parse_roundtrip(p):
    assert parse_poly(format_poly(p), R2) == p


def test_problem_roundtrip():
    text = (
        "# expect e=1\n"
        "ring x, y;\ntarget X, Y, Z;\nparams: u;\n"
        "map: x, y^2, y^3 + x^2*y;\n"
        "unfold: x, y^2, y^3 + x^2*y + u*y;\n"
        "q: x + 1;\n"
        "option seed = 3;\noption germ_faithful = true;\n"
    )
    pf = parse_problem(text)
    again = parse_problem(format_problem(pf))
    assert again == pf


def test_params_and_unfold_must_agree():
    with pytest.raises(ParseError):
        parse_problem("ring x, y;\nmap: x, y^2, x*y;\nparams: u;\n")
    with pytest.raises(ParseError):
        parse_problem("ring x, y;\nmap: x, y^2, x*y;\nparams: u;\nunfold: x, y^2;\n")


def test_duplicate_statement():
    with pytest.raises(ParseError) as info:
        parse_problem("ring x;\nmap: x;\nmap: x^2;\n")
    assert info.value.line == 3
