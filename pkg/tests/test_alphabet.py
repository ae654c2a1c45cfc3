import pytest

from calimits import (
    Alphabet,
    AlphabetError,
    EventuallyPeriodicConfiguration,
    PeriodicConfiguration,
    eca_rule,
)


def test_alphabet_basics():
    a = Alphabet(("0", "1", "2"))
    assert a.size == 3
    assert a.index("2") == 2
    assert a.name(0) == "0"
    assert not a.degenerate
    assert Alphabet(("x",)).degenerate


def test_alphabet_rejects_bad_symbols():
    with pytest.raises(AlphabetError):
        Alphabet(())
    with pytest.raises(AlphabetError):
        Alphabet(("a", "a"))
    with pytest.raises(AlphabetError):
        Alphabet(("a", ""))


def test_word_parsing_single_chars():
    a = Alphabet(("0", "1"))
    assert a.word("0110") == (0, 1, 1, 0)
    assert a.format_word((0, 1, 1, 0)) == "0110"
    assert a.word(["1", "0"]) == (1, 0)


def test_tokenizer_multichar_symbols():
    a = Alphabet(("0", "1", "0_prime"))
    assert a.tokenize("0_prime0") == (2, 0)
    assert a.tokenize("00_prime") == (0, 2)
    assert a.tokenize("10_prime0") == (1, 2, 0)


def test_tokenizer_rejects_ambiguity():
    a = Alphabet(("a", "ab", "b"))
    with pytest.raises(AlphabetError, match="ambiguous"):
        a.tokenize("ab")
    with pytest.raises(AlphabetError, match="cannot tokenize"):
        Alphabet(("0", "1")).tokenize("012")


def test_periodic_configuration_canonical_equality():
    x = PeriodicConfiguration((0, 1, 0, 1))
    y = PeriodicConfiguration((1, 0), phase=1)
    assert x == y
    assert hash(x) == hash(y)
    assert x != PeriodicConfiguration((1, 0))
    assert PeriodicConfiguration((0, 0, 0)) == PeriodicConfiguration((0,))


def test_periodic_configuration_window_and_step():
    x = PeriodicConfiguration((0, 1), phase=0)
    assert x.window(-2, 3) == (0, 1, 0, 1, 0)
    rule = eca_rule(170)  # shift left
    assert x.step(rule) == PeriodicConfiguration((1, 0))


def test_eventually_periodic_window():
    # ...000 1 000...
    x = EventuallyPeriodicConfiguration((0,), (1,), (0,), mid_start=0)
    assert x.window(-2, 3) == (0, 0, 1, 0, 0)
    assert x.symbol_at(0) == 1
    assert x.symbol_at(5) == 0


def test_eventually_periodic_equality_ignores_presentation():
    x = EventuallyPeriodicConfiguration((0,), (1,), (0,), mid_start=0)
    y = EventuallyPeriodicConfiguration((0, 0), (0, 1, 0), (0, 0), mid_start=-1)
    assert x == y
    z = EventuallyPeriodicConfiguration((0,), (1, 1), (0,), mid_start=0)
    assert x != z


def test_eventually_periodic_step_matches_pointwise():
    rule = eca_rule(110)
    x = EventuallyPeriodicConfiguration((0, 1), (1, 1, 0), (1, 0, 0), mid_start=2)
    y = x.step(rule)
    for i in range(-12, 15):
        assert y.symbol_at(i) == rule(x.window(i - 1, i + 2)), i


def test_eventually_periodic_mirror():
    x = EventuallyPeriodicConfiguration((0, 1), (1, 1, 0), (0,), mid_start=3)
    m = x.mirrored()
    for i in range(-12, 12):
        assert m.symbol_at(i) == x.symbol_at(-i)
