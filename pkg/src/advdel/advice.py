"""Bit-exact advice tape with a sequential reader.

The advisor appends bits; the online algorithm reads them front to back.
Reading past the written end yields filler bits from a seeded generator,
matching a tape that starts out random and is partly overwritten.
"""

from __future__ import annotations

import random
from typing import Iterable

MAX_UNARY = 64


class AdviceError(ValueError):
    pass


def encode_self_delimiting(value: int) -> str:
    """``L`` ones, a zero, then ``value`` in ``L`` bits, where ``L = value.bit_length()``."""
    if value < 0:
        raise ValueError("self-delimiting encoding needs a nonnegative integer")
    length = value.bit_length()
    return "1" * length + "0" + (format(value, "b") if length else "")


def decode_self_delimiting(bits: str) -> tuple[int, int]:
    """Decode a prefix of ``bits``; returns ``(value, bits consumed)``."""
    length = 0
    while length < len(bits) and bits[length] == "1":
        length += 1
        if length > MAX_UNARY:
            raise AdviceError("unary length prefix too long")
    if length >= len(bits):
        raise AdviceError("truncated self-delimiting prefix")
    payload = bits[length + 1: 2 * length + 1]
    if len(payload) != length:
        raise AdviceError("truncated self-delimiting payload")
    return (int(payload, 2) if length else 0), 2 * length + 1


def self_delimiting_length(value: int) -> int:
    return 2 * value.bit_length() + 1


def ceil_log2(x: int) -> int:
    """Bits needed to index ``x`` alternatives (0 for ``x <= 1``)."""
    return (x - 1).bit_length() if x > 1 else 0


class AdviceTape:
    def __init__(self, bits: Iterable[int] | str = (), seed: int = 0):
        self._bits = [int(b) for b in bits]
        if any(b not in (0, 1) for b in self._bits):
            raise ValueError("advice bits must be 0 or 1")
        self._seed = seed
        self._filler = random.Random(seed)
        self._filler_bits: list[int] = []
        self.position = 0

    def __len__(self) -> int:
        return len(self._bits)

    def __repr__(self):
        return f"AdviceTape({self.to_text()!r}, position={self.position})"

    @property
    def bits(self) -> str:
        return "".join(map(str, self._bits))

    @property
    def overread(self) -> int:
        """How many bits were read beyond the written advice."""
        return max(0, self.position - len(self._bits))

    # -- writing --

    def write_bits(self, bits: Iterable[int] | str) -> None:
        for b in bits:
            b = int(b)
            if b not in (0, 1):
                raise ValueError("advice bits must be 0 or 1")
            self._bits.append(b)

    def write_fixed(self, value: int, width: int) -> None:
        if value < 0 or value >= 1 << width:
            raise AdviceError(f"{value} does not fit in {width} bits")
        if width:
            self.write_bits(format(value, f"0{width}b"))

    def write_self_delimiting(self, value: int) -> None:
        self.write_bits(encode_self_delimiting(value))

    # -- reading --

    def read_bit(self) -> int:
        i = self.position
        self.position += 1
        if i < len(self._bits):
            return self._bits[i]
        i -= len(self._bits)
        while len(self._filler_bits) <= i:
            self._filler_bits.append(self._filler.getrandbits(1))
        return self._filler_bits[i]

    def read_fixed(self, width: int) -> int:
        value = 0
        for _ in range(width):
            value = value << 1 | self.read_bit()
        return value

    def read_self_delimiting(self) -> int:
        length = 0
        while self.read_bit():
            length += 1
            if length > MAX_UNARY:
                raise AdviceError("unary length prefix too long")
        return self.read_fixed(length)

    def rewind(self, seed: int | None = None) -> AdviceTape:
        """Fresh reader over the same written bits (optionally with other filler)."""
        return AdviceTape(self._bits, self._seed if seed is None else seed)

    # -- serialization: "<bit length>:<hex payload, MSB first, zero padded>" --

    def to_text(self) -> str:
        n = len(self._bits)
        if not n:
            return "0:"
        padded = self.bits + "0" * (-n % 4)
        return f"{n}:{int(padded, 2):0{len(padded) // 4}x}"

    @classmethod
    def from_text(cls, text: str, seed: int = 0) -> AdviceTape:
        try:
            length_text, payload = text.strip().split(":")
            n = int(length_text)
            bits = format(int(payload, 16), f"0{len(payload) * 4}b") if payload else ""
        except ValueError as exc:
            raise AdviceError(f"bad tape text {text!r}") from exc
        if n > len(bits) or bits[n:].strip("0"):
            raise AdviceError(f"tape payload does not match length {n}")
        return cls(bits[:n], seed)
