import pytest
from hypothesis import given, settings, strategies as st

from quadfq.gf import make_field
from quadfq.parsing import (ParseError, parse_algebraic_set, parse_form,
                            parse_quadric)
from quadfq.projective import monomials
from quadfq.quadric import QuadraticForm
from quadfq.varieties import Form

F3, F4, F5 = make_field(3), make_field(2, 2), make_field(5)


def test_examples():
    f = parse_quadric("x0^2+x1^2-x2^2", 3, F3)
    assert f == QuadraticForm.from_dict(3, F3, {(0, 0): 1, (1, 1): 1, (2, 2): 2})
    assert parse_quadric("x1*x0", 3, F3) == parse_quadric("x0*x1", 3, F3)
    assert parse_quadric(" x0 * x1\t+ 4*x2 ^ 2 ", 2, F3) == parse_quadric("x0*x1+x2^2", 2, F3)


def test_like_terms_combine():
    assert parse_quadric("x0*x1 + x1*x0 + x0*x1", 2, F5) == QuadraticForm.from_dict(2, F5, {(0, 1): 3})
    assert parse_quadric("x0*x0 + x0^2", 1, F3) == QuadraticForm.from_dict(1, F3, {(0, 0): 2})


def test_parentheses_expand():
    assert parse_quadric("(x0+x1)^2", 1, F3) == parse_quadric("x0^2+2*x0*x1+x1^2", 1, F3)
    assert parse_quadric("(x0+x1)*(x0-x1)", 1, F5) == parse_quadric("x0^2-x1^2", 1, F5)


def test_extension_coefficients():
    f = parse_quadric("[0,1]*x0*x1+x1^2", 1, F4)
    assert f.coeff(0, 1) == F4.from_coeffs([0, 1]) == 2
    assert parse_quadric("[1]*x0^2", 1, F4) == parse_quadric("x0^2", 1, F4)


@pytest.mark.parametrize("text,fragment", [
    ("x0*x1*x2", "x0*x1*x2"),
    ("x0^2+x1", "term x1"),
    ("x0^3", "degree 3"),
])
def test_inhomogeneous_names_the_term(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_quadric(text, 3, F3)
    assert fragment in str(exc.value)


@pytest.mark.parametrize("text,pos", [("x0 +* x1", 4), ("2 x0*x1", 2), ("x0*x1 +", 7), ("x5^2", 0)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_quadric(text, 3, F3)
    assert exc.value.pos == pos


def test_other_errors():
    with pytest.raises(ParseError, match="zero"):
        parse_quadric("x0^2-x0^2", 2, F3)
    with pytest.raises(ParseError):
        parse_quadric("[0,1]*x0^2", 2, F3)
    with pytest.raises(ParseError):
        parse_form("3", 2, F5)
    with pytest.raises(ParseError):
        parse_quadric("", 2, F5)


def test_degree_inference():
    f = parse_form("x0^3 + x1*x2*x0", 2, F5)
    assert f.degree == 3
    assert parse_form("x0 - x1", 2, F5).degree == 1


def test_algebraic_set_declarations():
    X = parse_algebraic_set(["x0*x1", "x0^2+x1^2-x2^2", "deg=4", "dim=1"], 3, F3)
    assert len(X.forms) == 2 and X.declared_deg == 4 and X.declared_dim == 1
    with pytest.raises(ParseError):
        parse_algebraic_set(["deg=2"], 3, F3)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([F3, F4, F5]), st.integers(1, 3), st.data())
def test_quadric_round_trip(F, n, data):
    N = (n + 1) * (n + 2) // 2
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=N, max_size=N).filter(any))
    f = QuadraticForm(n, F, tuple(coeffs))
    assert parse_quadric(str(f), n, F) == f


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([F3, F4]), st.integers(1, 3), st.data())
def test_form_round_trip(F, d, data):
    mons = monomials(2, d)
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=len(mons), max_size=len(mons)).filter(any))
    f = Form.from_dict(2, F, d, dict(zip(mons, coeffs)))
    assert parse_form(str(f), 2, F) == f
