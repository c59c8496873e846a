from app.core.advice.tape import AdviceTape
from app.core.errors import AdviceBudgetExceeded, EncodingError

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


def test_tape_self_delimited_layout():
    tape = AdviceTape()
    tape.write_self_delimited(5)
    # three ones, the separator, then 101
    assert tape.bits == "1110101"
    assert tape.read_self_delimited() == 5
    assert tape.bits_read() == 7


def test_tape_fixed_width_is_big_endian():
    tape = AdviceTape()
    tape.write_uint_fixed(6, 4)
    assert tape.bits == "0110"
    assert tape.read_uint_fixed(4) == 6


def test_tape_zero_width_writes_nothing():
    tape = AdviceTape()
    tape.write_uint_fixed(0, 0)
    assert len(tape) == 0
    assert tape.read_uint_fixed(0) == 0
    assert tape.bits_read() == 0


def test_tape_reads_past_end_yield_zero():
    tape = AdviceTape.from_bits("1")
    assert tape.read_bit() == 1
    assert tape.read_bit() == 0
    assert tape.read_bit() == 0
    assert tape.bits_read() == 3


def test_tape_signed_values():
    tape = AdviceTape()
    tape.write_signed(-3)
    tape.write_signed(0)
    tape.write_signed(7)
    # sign bit, then 4 self-delimited: 111 0 100
    assert tape.bits[:8] == "11110100"
    assert tape.read_signed() == -3
    assert tape.read_signed() == 0
    assert tape.read_signed() == 7


def test_tape_encoding_errors():
    tape = AdviceTape()
    with pytest.raises(EncodingError, match="does not fit"):
        tape.write_uint_fixed(4, 2)
    with pytest.raises(EncodingError, match="positive"):
        tape.write_self_delimited(0)
    with pytest.raises(EncodingError, match="Not a bit string"):
        AdviceTape.from_bits("012")


def test_tape_limit_raises_on_overread():
    tape = AdviceTape.from_bits("1010", limit=2)
    assert tape.read_uint_fixed(2) == 2
    with pytest.raises(AdviceBudgetExceeded):
        tape.read_bit()


def test_tape_replay_is_a_fresh_reader():
    tape = AdviceTape()
    tape.write_self_delimited(9)
    first = tape.replay()
    assert first.read_self_delimited() == 9
    second = tape.replay()
    assert second.bits_read() == 0
    assert second.read_self_delimited() == 9


def test_tape_prefix_zero_fills():
    tape = AdviceTape.from_bits("11")
    assert tape.prefix(5) == "11000"
    assert tape.prefix(1) == "1"


def test_tape_hex_keeps_leading_zeros():
    tape = AdviceTape.from_bits("0001")
    assert tape.to_hex() == "4:1"
    assert AdviceTape.from_hex(tape.to_hex()).bits == "0001"
    assert AdviceTape.from_hex(AdviceTape().to_hex()).bits == ""


@settings(max_examples=200)
@given(st.lists(st.integers(min_value=1, max_value=2 ** 64), min_size=1, max_size=20))
def test_tape_self_delimited_sequences(values):
    tape = AdviceTape()
    for value in values:
        tape.write_self_delimited(value)
    reader = tape.replay()
    assert [reader.read_self_delimited() for _ in values] == values
    assert reader.bits_read() == len(tape)


@given(st.lists(st.integers(min_value=-10 ** 6, max_value=10 ** 6), min_size=1, max_size=20))
def test_tape_signed_sequences(values):
    tape = AdviceTape()
    for value in values:
        tape.write_signed(value)
    reader = tape.replay()
    assert [reader.read_signed() for _ in values] == values
