import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from advdel.advice import (
    AdviceError,
    AdviceTape,
    ceil_log2,
    decode_self_delimiting,
    encode_self_delimiting,
    self_delimiting_length,
)


def test_encoding_examples():
    assert encode_self_delimiting(0) == "0"
    assert encode_self_delimiting(2) == "11010"
    assert encode_self_delimiting(1) == "101"
    assert encode_self_delimiting(4) == "1110100"


def test_round_trip_and_length_formula():
    for n in range(1001):
        code = encode_self_delimiting(n)
        assert len(code) == self_delimiting_length(n) == 2 * (n.bit_length()) + 1
        assert decode_self_delimiting(code + "1011") == (n, len(code))


@given(st.lists(st.integers(0, 10 ** 6), max_size=20))
def test_prefix_free_concatenation(values):
    bits = "".join(encode_self_delimiting(v) for v in values)
    out, i = [], 0
    while i < len(bits):
        v, used = decode_self_delimiting(bits[i:])
        out.append(v)
        i += used
    assert out == values


def test_decode_errors():
    for bad in ["", "1", "11", "110", "1101"]:
        with pytest.raises(AdviceError):
            decode_self_delimiting(bad)
    with pytest.raises(ValueError):
        encode_self_delimiting(-1)


def test_ceil_log2():
    assert [ceil_log2(x) for x in range(1, 10)] == [0, 1, 2, 2, 3, 3, 3, 3, 4]
    assert ceil_log2(0) == 0


def test_fixed_width_pairs():
    rng = random.Random(1)
    tape = AdviceTape()
    written = []
    for _ in range(10 ** 4):
        w = rng.randint(0, 12)
        v = rng.randrange(1 << w) if w else 0
        tape.write_fixed(v, w)
        written.append((v, w))
    reader = tape.rewind()
    assert [reader.read_fixed(w) for _, w in written] == [v for v, _ in written]
    assert reader.overread == 0
    assert reader.position == len(tape)


def test_write_fixed_overflow():
    with pytest.raises(AdviceError):
        AdviceTape().write_fixed(4, 2)
    with pytest.raises(ValueError):
        AdviceTape("012")


def test_mixed_tape_reads_back():
    tape = AdviceTape()
    tape.write_self_delimiting(9)
    tape.write_fixed(3, 2)
    tape.write_self_delimiting(0)
    r = tape.rewind()
    assert (r.read_self_delimiting(), r.read_fixed(2), r.read_self_delimiting()) == (9, 3, 0)


def test_filler_is_seeded_and_counted():
    tape = AdviceTape("1")
    a, b = tape.rewind(seed=5), tape.rewind(seed=5)
    assert [a.read_bit() for _ in range(40)] == [b.read_bit() for _ in range(40)]
    assert a.overread == 39
    c = tape.rewind(seed=6)
    assert [c.read_bit() for _ in range(40)] != [tape.rewind(seed=5).read_bit() for _ in range(40)]


@given(st.text(alphabet="01", max_size=70))
def test_hex_text_round_trip(bits):
    tape = AdviceTape(bits)
    assert AdviceTape.from_text(tape.to_text()).bits == bits


def test_hex_text_examples_and_errors():
    assert AdviceTape("11010").to_text() == "5:d0"
    assert AdviceTape().to_text() == "0:"
    for bad in ["5", "x:10", "3:ff", "9:ff"]:
        with pytest.raises(AdviceError):
            AdviceTape.from_text(bad)
