from typing import Iterable, Optional

from ..errors import AdviceBudgetExceeded, EncodingError


class AdviceTape:
    """
    Binary advice tape shared by an oracle (writer) and an online algorithm (reader).

    The oracle appends bits; the algorithm reads them sequentially. The tape is
    conceptually infinite: reading past the written region yields 0. The advice
    complexity of a run is `bits_read()`, the largest bit index read plus one.
    """

    def __init__(self, bits: Optional[Iterable[int]] = None, limit: Optional[int] = None):
        self.written_bits = bytearray(bits or ())
        self.read_cursor = 0
        self.peak_read = 0
        self.limit = limit

    @classmethod
    def from_bits(cls, bits: str, limit: Optional[int] = None) -> "AdviceTape":
        if any(ch not in "01" for ch in bits):
            raise EncodingError(f"Not a bit string: {bits!r}")
        return cls((1 if ch == "1" else 0 for ch in bits), limit=limit)

    @classmethod
    def from_hex(cls, data: str) -> "AdviceTape":
        """Inverse of `to_hex`: '<bit count>:<hex digits>'."""
        count_text, _, digits = data.partition(":")
        count = int(count_text)
        value = int(digits, 16) if digits else 0
        bits = format(value, "b").zfill(count)[-count:] if count else ""
        return cls.from_bits(bits)

    # -------------------------
    # Writing (oracle side)
    # -------------------------
    def write_bit(self, bit: int) -> "AdviceTape":
        if bit not in (0, 1):
            raise EncodingError(f"Bit must be 0 or 1, got {bit}")
        self.written_bits.append(bit)
        return self

    def write_bits(self, bits: str) -> "AdviceTape":
        for ch in bits:
            self.write_bit(1 if ch == "1" else 0 if ch == "0" else -1)
        return self

    def write_uint_fixed(self, value: int, width: int) -> "AdviceTape":
        """
        Append `value` in exactly `width` bits, most-significant first.
        Args:
            value (int): Non-negative integer below 2**width
            width (int): Number of bits to write (0 writes nothing and only admits 0)
        Returns:
            AdviceTape: self, for chaining
        """
        if width < 0:
            raise EncodingError(f"Width must be non-negative, got {width}")
        if value < 0 or value >= (1 << width):
            raise EncodingError(f"Value {value} does not fit in {width} bits")
        for shift in range(width - 1, -1, -1):
            self.written_bits.append((value >> shift) & 1)
        return self

    def write_self_delimited(self, value: int) -> "AdviceTape":
        """
        Append `value` as L ones, a zero, then L big-endian bits (L = bit length).
        Args:
            value (int): Positive integer
        Returns:
            AdviceTape: self, for chaining
        """
        if value < 1:
            raise EncodingError(f"Self-delimited values must be positive, got {value}")
        length = value.bit_length()
        self.written_bits.extend([1] * length)
        self.written_bits.append(0)
        return self.write_uint_fixed(value, length)

    def write_signed(self, value: int) -> "AdviceTape":
        """Sign bit (1 = negative) followed by self-delimited |value| + 1."""
        self.write_bit(1 if value < 0 else 0)
        return self.write_self_delimited(abs(value) + 1)

    # -------------------------
    # Reading (algorithm side)
    # -------------------------
    def read_bit(self) -> int:
        if self.limit is not None and self.read_cursor >= self.limit:
            raise AdviceBudgetExceeded(
                f"Read of bit {self.read_cursor} exceeds the advice budget of {self.limit} bits"
            )
        index = self.read_cursor
        bit = self.written_bits[index] if index < len(self.written_bits) else 0
        self.read_cursor += 1
        self.peak_read = max(self.peak_read, self.read_cursor)
        return bit

    def read_uint_fixed(self, width: int) -> int:
        value = 0
        for _ in range(width):
            value = (value << 1) | self.read_bit()
        return value

    def read_self_delimited(self) -> int:
        length = 0
        while self.read_bit() == 1:
            length += 1
        return self.read_uint_fixed(length)

    def read_signed(self) -> int:
        negative = self.read_bit() == 1
        magnitude = self.read_self_delimited() - 1
        return -magnitude if negative else magnitude

    def bits_read(self) -> int:
        return self.peak_read

    # -------------------------
    # Inspection
    # -------------------------
    @property
    def bits(self) -> str:
        return "".join("1" if b else "0" for b in self.written_bits)

    def __len__(self) -> int:
        return len(self.written_bits)

    def replay(self, limit: Optional[int] = None) -> "AdviceTape":
        """A fresh reader over the same written bits."""
        return AdviceTape(self.written_bits, limit=limit)

    def prefix(self, count: int) -> str:
        """The first `count` bits as the algorithm would see them (zero-filled)."""
        bits = self.bits[:count]
        return bits + "0" * (count - len(bits))

    def to_hex(self) -> str:
        count = len(self.written_bits)
        if count == 0:
            return "0:"
        return f"{count}:{int(self.bits, 2):x}"

    def __repr__(self) -> str:
        return f"AdviceTape(bits={self.bits!r}, read_cursor={self.read_cursor})"
