"""Tests for upper/lower bounds, averages and the weight rules."""

from fractions import Fraction

import pytest

from composite_codec.core import DomainError, all_sequences
from composite_codec.bounds import (
    TABLE_KINDS,
    ValidityRangeError,
    aspv,
    asymptotic_upper,
    average_ball,
    ceil_log,
    emit_bound_table,
    format_rational,
    gspb_upper,
    gspb_weight_rule,
    is_prime_power,
    lower_bound,
    sphere_packing_upper,
)
from composite_codec.error_model import (
    enumerate_del_ball,
    enumerate_sub_ball,
    parse_spec,
    sub_ball_size,
    vertex_set_size_10,
)
from composite_codec.oracle import check_fractional_transversal


def test_format_rational():
    assert format_rational(Fraction(121, 5)) == "121/5"
    assert format_rational(Fraction(10)) == "10"
    assert format_rational(Fraction(-3, 2)) == "-3/2"


def test_ceil_log():
    assert ceil_log(3, 1) == 0
    assert ceil_log(3, 3) == 1
    assert ceil_log(3, 4) == 2
    assert ceil_log(2, 9) == 4
    with pytest.raises(DomainError):
        ceil_log(1, 5)
    with pytest.raises(DomainError):
        ceil_log(2, 0)


def test_is_prime_power():
    hits = [x for x in range(2, 20) if is_prime_power(x)]
    assert hits == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
    assert not is_prime_power(1)
    assert not is_prime_power(12)


def test_gspb_first_channel_closed_form():
    spec = parse_spec("(1,0)")
    assert gspb_upper(3, 2, spec).value == Fraction(10)
    assert gspb_upper(4, 2, spec).value == Fraction(121, 5)
    # ((k+1)^{n+1} - (k-1)^{n+1}) / (2(n+1)) for general k
    spec3 = parse_spec("(1,0,0)")
    for n in (2, 3, 5):
        expect = Fraction(4 ** (n + 1) - 2 ** (n + 1), 2 * (n + 1))
        assert gspb_upper(n, 3, spec3).value == expect


def test_gspb_total_one_closed_form():
    spec = parse_spec("t:1")
    assert gspb_upper(4, 2, spec).value == Fraction(243, 13)
    for n, k in ((4, 2), (5, 3), (6, 4)):
        expect = Fraction((k + 1) ** n) / (Fraction(2 * k * n, k + 1) - 1)
        assert gspb_upper(n, k, parse_spec("t:1")).value == expect


def test_gspb_one_one_closed_form_and_validity():
    spec = parse_spec("(1,1)")
    assert gspb_upper(4, 2, spec).value == Fraction(486)
    assert gspb_upper(5, 2, spec).value == Fraction(3 ** 5 * 6, 4)
    with pytest.raises(ValidityRangeError):
        gspb_upper(3, 2, spec)


def test_gspb_total_two_validity():
    with pytest.raises(ValidityRangeError):
        gspb_upper(20, 2, parse_spec("t:2"))
    result = gspb_upper(48, 2, parse_spec("t:2"))
    assert result.kind == "valid_upper"
    assert result.value > 0


def test_gspb_deletion_value():
    assert gspb_upper(4, 2, parse_spec("d:(1,0)")).value == Fraction(143, 3)


def test_gspb_kind_and_floor():
    r = gspb_upper(4, 2, parse_spec("(1,0)"))
    assert r.kind == "valid_upper"
    assert r.value_floor == 24
    assert str(r) == "121/5"


def test_sphere_packing_closed_form():
    from math import comb

    # 3^n / C(n, min(e0, e1)) per channel, 3^n / C(n, e) for a total budget.
    for n in (2, 4, 6):
        assert sphere_packing_upper(n, parse_spec("(1,0)")).value == Fraction(3 ** n)
        assert sphere_packing_upper(n, parse_spec("(1,1)")).value == Fraction(3 ** n, n)
        assert sphere_packing_upper(n, parse_spec("t:2")).value == Fraction(
            3 ** n, comb(n, 2))
    with pytest.raises(DomainError):
        sphere_packing_upper(1, parse_spec("t:2"))
    with pytest.raises(DomainError):
        sphere_packing_upper(4, parse_spec("(1,1,1)"))


def test_sphere_packing_golden():
    assert sphere_packing_upper(4, parse_spec("(1,1)")).value == Fraction(81, 4)


def test_average_ball_matches_direct_average():
    for text in ("(1,0)", "t:1", "d:(1,0)", "d:1"):
        spec = parse_spec(text)
        for n in (2, 3, 4):
            if text.startswith("d:"):
                sizes = [len(enumerate_del_ball(s, spec)) for s in all_sequences(n, 2)]
            else:
                sizes = [sub_ball_size(s, 2, spec) for s in all_sequences(n, 2)]
            expect = Fraction(sum(sizes), 3 ** n)
            assert average_ball(n, 2, spec).value == expect


def test_average_deletion_closed_forms():
    for n in (2, 5, 9):
        assert average_ball(n, 2, parse_spec("d:(1,0)")).value == 1 + Fraction(4 * (n - 1), 9)
        assert average_ball(n, 2, parse_spec("d:1")).value == 2 + Fraction(8 * (n - 1), 9)


def test_aspv_is_space_over_average():
    spec = parse_spec("d:1")
    got = aspv(4, 2, spec)
    assert got.value == Fraction(243, 14)
    assert got.kind == "average_value"


def test_asymptotic_estimates_are_labelled():
    r = asymptotic_upper(20, parse_spec("(1,1)"))
    assert r.kind == "asymptotic_estimate"
    assert r.value > 0
    t = asymptotic_upper(60, parse_spec("t:2"), tighter=True)
    assert t.kind == "asymptotic_estimate"
    with pytest.raises(DomainError):
        asymptotic_upper(20, parse_spec("(1,0)"))


def test_lower_bound_goldens():
    assert lower_bound(4, 2, parse_spec("(1,0)"), "coset").value == Fraction(81, 8)
    assert lower_bound(3, 2, parse_spec("(1,0)"), "fiber").value == Fraction(9)
    assert lower_bound(4, 4, parse_spec("t:1"), "lee").value == Fraction(25)
    assert lower_bound(4, 2, parse_spec("t:1"), "bch").value == Fraction(3)
    assert lower_bound(4, 2, parse_spec("d:(1,0)"), "vt_del").value == Fraction(81, 5)
    assert lower_bound(4, 2, parse_spec("d:1"), "vt1_del").value == Fraction(9)
    assert lower_bound(7, 2, parse_spec("d:(1,0)"), "tenengolts_del").value == Fraction(9)
    assert lower_bound(9, 2, parse_spec("d:1"), "tenengolts1_del").value == Fraction(3)


def test_lower_bound_kinds_and_errors():
    r = lower_bound(4, 2, parse_spec("(1,0)"), "coset")
    assert r.kind == "valid_lower"
    with pytest.raises(DomainError):
        lower_bound(4, 2, parse_spec("(1,0)"), "bch")
    with pytest.raises(DomainError):
        lower_bound(4, 3, parse_spec("t:1"), "lee")
    with pytest.raises(DomainError):
        lower_bound(4, 2, parse_spec("t:1"), "nonsense")


def test_lower_bounds_stay_below_gspb():
    spec = parse_spec("(1,0)")
    for n in (3, 4, 5, 6):
        assert lower_bound(n, 2, spec, "fiber").value <= gspb_upper(n, 2, spec).value
        assert lower_bound(n, 2, spec, "coset").value <= gspb_upper(n, 2, spec).value


def test_weight_rule_first_channel_feasible_and_tight():
    # Total weight of the rule equals the closed-form GSPB value exactly.
    spec = parse_spec("(1,0)")
    for n in (2, 3, 4):
        weight = gspb_weight_rule(n, 2, spec)
        report = check_fractional_transversal(
            list(all_sequences(n, 2)),
            lambda s: enumerate_sub_ball(s, 2, spec),
            weight,
        )
        assert report.feasible
        assert report.total_weight == gspb_upper(n, 2, spec).value


def test_weight_rule_deletion_feasible_and_tight():
    spec = parse_spec("d:(1,0)")
    for n in (3, 4, 5):
        weight = gspb_weight_rule(n, 2, spec)
        outputs = set()
        for s in all_sequences(n, 2):
            outputs |= enumerate_del_ball(s, spec)
        assert len(outputs) == vertex_set_size_10(n)
        report = check_fractional_transversal(
            list(all_sequences(n, 2)),
            lambda s: enumerate_del_ball(s, spec),
            weight,
        )
        assert report.feasible
        assert report.total_weight == gspb_upper(n, 2, spec).value


def test_weight_rule_total_one_feasible():
    spec = parse_spec("t:1")
    for k in (2, 3):
        weight = gspb_weight_rule(3, k, spec)
        report = check_fractional_transversal(
            list(all_sequences(3, k)),
            lambda s, _k=k: enumerate_sub_ball(s, _k, spec),
            weight,
        )
        assert report.feasible


def test_weight_rule_rejects_either_channel_deletion():
    with pytest.raises(DomainError):
        gspb_weight_rule(4, 2, parse_spec("d:1"))


def test_emit_bound_table_table4():
    rows = list(emit_bound_table("table4", range(2, 5)))
    assert rows[0] == ["n", "gspb_del", "aspv_d(1,0)", "aspv_d(1)"]
    assert rows[1] == ["2", "7", "6", "3"]
    assert rows[2] == ["3", "18", "14", "7"]
    assert rows[3] == ["4", "47", "34", "17"]


def test_emit_bound_table_kinds():
    assert TABLE_KINDS == (
        "table1", "table2", "table3", "table4", "summary6", "summary7", "summary8",
    )
    for kind in TABLE_KINDS:
        rows = list(emit_bound_table(kind, range(4, 6)))
        assert len(rows) == 3
        assert rows[0][0] == "n"
    with pytest.raises(DomainError):
        list(emit_bound_table("table9", range(2, 4)))
