import pytest

from liequiv.catalog import find_entry
from liequiv.dsl import (DslSyntaxError, UnknownCoordinateError, parse_expr,
                         parse_generator, print_generator)
from liequiv.expr import Expr, unknown
from liequiv.generators import AnsatzError, make_generator, zero_generator


def test_parse_boost(spaces):
    reg = spaces[2].reg
    got = parse_generator(reg, "t*d/dx1 + d/du1")
    assert got == find_entry(spaces[2].catalog, "Y1").spec


def test_parse_scaling_dim1(spaces):
    reg = spaces[1].reg
    src = "x1*d/dx1 + u1*d/du1 + 2*p*d/dp + 2*Pi11*d/dPi11 + 2*G*d/dG"
    assert parse_generator(reg, src) == find_entry(spaces[1].catalog, "Z1").spec


def test_unknown_coordinate_is_named(spaces):
    reg = spaces[1].reg
    with pytest.raises(UnknownCoordinateError) as err:
        parse_generator(reg, "q*d/dp")
    assert err.value.coordinate == "q"
    with pytest.raises(UnknownCoordinateError):
        parse_generator(reg, "d/dq")


def test_syntax_errors_carry_position(spaces):
    reg = spaces[1].reg
    with pytest.raises(DslSyntaxError) as err:
        parse_generator(reg, "2*p d/dp")
    assert err.value.line == 1 and err.value.column == 5
    with pytest.raises(DslSyntaxError):
        parse_generator(reg, "")
    with pytest.raises(DslSyntaxError):
        parse_generator(reg, "d/dp + ")
    with pytest.raises(DslSyntaxError):
        parse_generator(reg, "p**(-1)*d/dp")
    with pytest.raises(DslSyntaxError):
        parse_expr(reg, "p**1/2")


def test_prolonged_directions_are_rejected(spaces):
    reg = spaces[1].reg
    with pytest.raises(DslSyntaxError) as err:
        parse_generator(reg, "d/du1_x1")
    assert "prolonged" in str(err.value)
    with pytest.raises(DslSyntaxError):
        parse_generator(reg, "d/dPi11_d_u1x1")


def test_ansatz_violation_through_dsl(spaces):
    reg = spaces[1].reg
    with pytest.raises(AnsatzError) as err:
        parse_generator(reg, "Pi11*d/dt")
    assert "Pi11" in str(err.value)


def test_symmetric_index_resolution(spaces):
    reg = spaces[2].reg
    a = parse_generator(reg, "d/dPi21")
    b = parse_generator(reg, "d/dPi12")
    assert a == b
    assert parse_expr(reg, "Pi21") == Expr.of(reg.pi[(1, 2)])


def test_zero_generator_round_trip(spaces):
    reg = spaces[1].reg
    g = zero_generator(reg)
    assert print_generator(reg, g) == "0"
    assert parse_generator(reg, "0") == g


def test_unknown_constants_round_trip(spaces):
    reg = spaces[1].reg
    g = make_generator(reg, eta_p=unknown("alpha") * reg.p)
    printed = print_generator(reg, g)
    assert printed == "?alpha*p*d/dp"
    assert parse_generator(reg, printed) == g


def test_catalog_round_trip(spaces):
    for dim in (1, 2, 3):
        reg = spaces[dim].reg
        for entry in spaces[dim].catalog:
            printed = print_generator(reg, entry.spec)
            assert parse_generator(reg, printed) == entry.spec, entry.name


def test_parenthesized_coefficients(spaces):
    reg = spaces[2].reg
    g = parse_generator(reg, "(p - 3/2*rho)*d/dp - d/drho")
    assert g.eta_p == reg.p - Expr.const(3) / 2 * reg.rho
    assert g.eta_rho == Expr.const(-1)
    assert parse_generator(reg, print_generator(reg, g)) == g


def test_expression_round_trip(spaces):
    reg = spaces[2].reg
    samples = [
        reg.rho * reg.u_x[(1, 2)] ** 2 - Expr.const(7) / 3,
        reg.pi[(1, 2)] * reg.h + reg.g ** 2 * reg.p,
        Expr.of(reg.pi_d[(1, 2, 2, 1)]) * reg.u_xx[(1, 1, 2)],
        Expr(),
    ]
    for e in samples:
        assert parse_expr(reg, str(e)) == e


def test_whitespace_and_signs(spaces):
    reg = spaces[1].reg
    g1 = parse_generator(reg, "-d/dp")
    assert g1.eta_p == Expr.const(-1)
    g2 = parse_generator(reg, "  - 2 * p * d/dp\n + d/dt ")
    assert g2.eta_p == -2 * reg.p
    assert g2.xi_t == Expr.const(1)
