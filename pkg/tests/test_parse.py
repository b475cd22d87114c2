"""Text front end: expression grammar, point literals, job files."""

import pytest

from corrdyn.errors import MissingField, ParseError, UnknownCommand, WrongArity
from corrdyn.parse import (
    BIVARIATE,
    RATIONAL,
    UNIVARIATE,
    parse_expression,
    parse_job,
    parse_point,
    parse_point_list,
)
from corrdyn.poly import BiPoly, Poly, RationalFunction

from _helpers import F5, F7, Q, pt, inf


def test_bivariate_expression():
    bp = parse_expression("y^2 - x^3 + 1", BIVARIATE, Q)
    assert isinstance(bp, BiPoly)
    assert (bp.deg_x, bp.deg_y) == (3, 2)
    assert bp == (BiPoly.var_y(Q) ** 2 - BiPoly.var_x(Q) ** 3
                  + BiPoly.one(Q))


def test_univariate_expression():
    p = parse_expression("x^2 + 1", UNIVARIATE, Q)
    assert isinstance(p, Poly)
    assert p == Poly(Q, [1, 0, 1])
    with pytest.raises(WrongArity):
        parse_expression("x + y", UNIVARIATE, Q)


def test_rational_expression():
    f = parse_expression("(x^2+1)/x", RATIONAL, Q)
    assert isinstance(f, RationalFunction)
    assert f == RationalFunction(Poly(Q, [1, 0, 1]), Poly(Q, [0, 1]))
    assert f.degree == 2
    # a bare polynomial is also a valid rational expression
    g = parse_expression("2*x", RATIONAL, Q)
    assert g == RationalFunction(Poly(Q, [0, 2]), Poly.one(Q))
    with pytest.raises(WrongArity):
        parse_expression("x/y", RATIONAL, Q)


def test_expression_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        parse_expression("x^", UNIVARIATE, Q)
    assert e.value.position == 2
    with pytest.raises(ParseError) as e:
        parse_expression("2x", UNIVARIATE, Q)
    assert e.value.position == 1
    with pytest.raises(ParseError):
        parse_expression("x*-1", UNIVARIATE, Q)
    with pytest.raises(ParseError):
        parse_expression("x--1", UNIVARIATE, Q)
    with pytest.raises(ParseError) as e:
        parse_expression("$", UNIVARIATE, Q)
    assert e.value.position == 0
    with pytest.raises(ParseError):
        parse_expression("", UNIVARIATE, Q)
    with pytest.raises(ParseError):
        parse_expression("x^(2)", UNIVARIATE, Q)


def test_rational_slash_rules():
    with pytest.raises(ParseError):
        parse_expression("x/2/3", RATIONAL, Q)
    with pytest.raises(ParseError):
        parse_expression("(1/x)+1", RATIONAL, Q)
    with pytest.raises(ParseError):
        parse_expression("x/(x-x)", RATIONAL, Q)
    with pytest.raises(ParseError):
        parse_expression("x/0", RATIONAL, Q)


def test_round_trip_is_idempotent():
    for text in ("y^2 - x^3 + 1", "-x^3+y^2+1", "x*y-1", "2*x^2-3*y+7"):
        bp = parse_expression(text, BIVARIATE, Q)
        printed = bp.to_str()
        assert parse_expression(printed, BIVARIATE, Q) == bp
    f = parse_expression("(x^2+1)/x", RATIONAL, Q)
    assert parse_expression(str(f), RATIONAL, Q) == f


def test_coefficients_reduce_mod_p():
    p = parse_expression("10*x^2-3", UNIVARIATE, F7)
    assert str(p) == "3*x^2+4"


def test_parse_point():
    assert parse_point(Q, "[2:1]") == pt(Q, 2)
    assert parse_point(Q, "[-1:2]") == pt(Q, "-1/2")
    assert parse_point(Q, "[1:0]") == inf(Q)
    assert parse_point(Q, "[3:0]") == inf(Q)
    assert parse_point(F5, "[7:1]") == pt(F5, 2)
    with pytest.raises(ParseError):
        parse_point(Q, "[0:0]")
    with pytest.raises(ParseError):
        parse_point(Q, "2:1")
    with pytest.raises(ParseError):
        parse_point(Q, "[2:1")
    with pytest.raises(ParseError):
        parse_point(Q, "[a:1]")


def test_parse_point_list():
    pts = parse_point_list(Q, "[0:1], [1:0],[2:1]")
    assert pts == [pt(Q, 0), inf(Q), pt(Q, 2)]
    with pytest.raises(ParseError):
        parse_point_list(Q, "")


MINIMAL = """\
version = 1
[field]
spec = "Q"
[corr]
f = "x^2"
[command]
name = "exceptional"
"""


def test_parse_job_minimal():
    job = parse_job(MINIMAL)
    assert job.version == 1
    assert job.command == "exceptional"
    assert job.corr.bidegree == (1, 2)
    assert job.corr2 is None
    assert job.rng_seed == 0
    assert job.echo["field"] == "Q"
    assert job.echo["corr"] == {"f": "x^2"}


def test_parse_job_full():
    text = """\
# a comment line
version = 1

[field]
spec = "Fp:5"   # inline comment

[corr]
F = "x*y - 1"

[command]
name = "complete-sets"
seed = "[2:1]"
max_size = 64
rng = 9
"""
    job = parse_job(text)
    assert job.field.spec_string() == "Fp:5"
    assert job.command == "complete-sets"
    assert job.params["seed"] == "[2:1]"
    assert job.params["max_size"] == 64
    assert job.rng_seed == 9
    assert "rng" not in job.params


def test_parse_job_second_correspondence():
    text = MINIMAL.replace('name = "exceptional"', 'name = "compose"')
    text = text.replace('f = "x^2"', 'f = "x^2"\nf2 = "2*x"')
    job = parse_job(text)
    assert job.corr2 is not None
    assert job.corr2.bidegree == (1, 1)


def test_parse_job_errors():
    with pytest.raises(MissingField):
        parse_job("version = 1\n[corr]\nf = \"x^2\"\n"
                  "[command]\nname = \"exceptional\"\n")
    with pytest.raises(UnknownCommand):
        parse_job(MINIMAL.replace("exceptional", "spectra"))
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace("version = 1\n", ""))
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace("version = 1", "version = 2"))
    # duplicate section
    with pytest.raises(ParseError):
        parse_job(MINIMAL + "[corr]\nf = \"x\"\n")
    # duplicate key
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace('f = "x^2"', 'f = "x^2"\nf = "x^3"'))
    # both F and f
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace('f = "x^2"', 'f = "x^2"\nF = "x^2-y"'))
    # unknown key in a section
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace('spec = "Q"', 'spec = "Q"\nextra = 3'))
    # unknown section
    with pytest.raises(ParseError):
        parse_job(MINIMAL + "[mystery]\nk = 1\n")
    # missing required parameter for the command
    with pytest.raises(MissingField):
        parse_job(MINIMAL.replace("exceptional", "complete-sets"))
    # parameter with the wrong type
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace('name = "exceptional"',
                                  'name = "complete-sets"\nseed = 3'))
    with pytest.raises(ParseError):
        parse_job(MINIMAL.replace('name = "exceptional"',
                                  'name = "graph"\nK = "2"'))


def test_parse_job_echo_is_canonical():
    # echo stores the canonical printed form of the divisor
    text = MINIMAL.replace('f = "x^2"', 'F = "y*1 - x^2 + 0"')
    job = parse_job(text)
    assert job.echo["corr"] == {"F": "-x^2+y"}
