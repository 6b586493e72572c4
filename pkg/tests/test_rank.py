import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqrc.core import ClassDistribution, Symbol, ValidationError
from fqrc.rank import NO_CLASS_TEXT, Thresholds, describe, interpret, symbol_string
from conftest import EIGHT_CLASS_ROWS, EIGHT_CLASSES

TABLE2 = ClassDistribution((0.5561, 0.0264, 0.0, 0.4175))
NAMES4 = ["Class1", "Class2", "Class3", "Class4"]


def test_table2_ranking():
    ri = interpret(TABLE2)
    assert ri.order == [0, 3, 1]
    assert [e.symbol for e in ri.ranked] == [Symbol.TOP, Symbol.HIGHER, Symbol.HIGHER]
    assert ri.ranked[1].r_diff == pytest.approx(0.1386, abs=5e-4)
    assert ri.ranked[2].r_diff == pytest.approx(0.3911, abs=5e-4)
    assert ri.excluded == {2}
    assert describe(ri, NAMES4) == "Class1 > Class4 > Class2, definitely not: Class3"
    assert symbol_string(ri, ["C1", "C2", "C3", "C4"]) == "C1>C4>C2|x:C3"


def test_max_mode_measures_against_top():
    ri = interpret(TABLE2, diff_mode="max")
    assert ri.ranked[2].r_diff == pytest.approx(0.5297, abs=5e-4)
    assert ri.ranked[2].symbol is Symbol.MUCH_HIGHER
    with pytest.raises(ValidationError):
        interpret(TABLE2, diff_mode="median")


@pytest.mark.parametrize("r,published", EIGHT_CLASS_ROWS)
def test_eight_class_interpretations(r, published):
    ri = interpret(ClassDistribution.normalized(r))
    assert symbol_string(ri, EIGHT_CLASSES, unicode=True) == published.replace("q×", "×")


def test_much_higher_rendering():
    ri = interpret(ClassDistribution((0.7644, 0.2356, 0, 0, 0, 0, 0, 0)))
    assert describe(ri, EIGHT_CLASSES) == "T >> I, definitely not: S,H,C,O,M,F"


def test_all_zero_excludes_everything():
    ri = interpret(ClassDistribution.zeros(4))
    assert ri.ranked == ()
    assert ri.excluded == {0, 1, 2, 3}
    assert describe(ri, NAMES4) == NO_CLASS_TEXT


def test_single_survivor():
    ri = interpret(ClassDistribution((0, 1.0, 0)))
    assert describe(ri, ["A", "B", "C"]) == "B, definitely not: A,C"


def test_uniform_two_class():
    ri = interpret(ClassDistribution((0.5, 0.5)))
    assert describe(ri, ["A", "B"]) == "A = B"


def test_thresholds_parse_and_validate():
    assert Thresholds.parse("0,0.3,1") == Thresholds(0, 0.3, 1)
    for bad in ("0,0.5", "a,b,c", "0.6,0.5,1"):
        with pytest.raises(ValidationError):
            Thresholds.parse(bad)


def test_custom_thresholds_change_symbols():
    ri = interpret(TABLE2, Thresholds(0, 0.2, 1))
    assert [e.symbol for e in ri.ranked[1:]] == [Symbol.HIGHER, Symbol.MUCH_HIGHER]


weights = st.lists(st.one_of(st.just(0.0), st.floats(0.0, 1.0)), min_size=1, max_size=10)


@given(weights)
@settings(max_examples=300)
def test_interpretation_invariants(w):
    d = ClassDistribution.normalized(w)
    ri = interpret(d)
    assert ri.excluded == {k for k, v in enumerate(d.r) if v == 0}
    assert set(ri.order) | ri.excluded == set(range(len(w)))
    rs = [e.r for e in ri.ranked]
    assert rs == sorted(rs, reverse=True)
    for e in ri.ranked[1:]:
        assert (e.symbol is Symbol.EQUAL) == (e.r_diff == 0)
    if d.is_all_zero:
        return
    # re-ranking the already-ordered distribution reproduces the symbols
    reordered = ClassDistribution(tuple(d.r[k] for k in ri.order) + (0.0,) * len(ri.excluded))
    assert [e.symbol for e in interpret(reordered).ranked] == [e.symbol for e in ri.ranked]


@given(st.floats(0, 1))
def test_threshold_partition(r_diff):
    s = Thresholds().symbol(r_diff)
    if r_diff == 0:
        assert s is Symbol.EQUAL
    elif r_diff <= 0.5:
        assert s is Symbol.HIGHER
    else:
        assert s is Symbol.MUCH_HIGHER
