"""Superimposed prefix-hash codec.

Encoding hashes every prefix of each message (least significant bit
first, then constant-zero checksum bits) and ORs the resulting marks
into one codeword, so message sets share marks wherever their leading
bits agree. Decoding walks a breadth-first tree: each surviving branch
keeps its cached register, tries both bit extensions during data rounds
and only the zero extension during checksum rounds, and survives a round
when the received codeword carries a mark at the branch address or the
address falls inside a declared gap. Marks can be added by noise but
never removed, so every encoded message survives decoding; the only
error mode is extra decoded messages (hallucinations).
"""

import time
from dataclasses import dataclass, field, replace

from . import model
from .prbs import DEFAULT_SEED, HashConfig, hash_prefix, step_register


class Codeword:
    """Fixed-length bit array addressed by hash outputs."""

    __slots__ = ("bits",)

    def __init__(self, bits: bytearray):
        self.bits = bits

    @classmethod
    def zeros(cls, length: int) -> "Codeword":
        return cls(bytearray(length))

    @classmethod
    def from_bits(cls, values) -> "Codeword":
        bits = bytearray(1 if v else 0 for v in values)
        return cls(bits)

    def copy(self) -> "Codeword":
        return Codeword(bytearray(self.bits))

    def set_mark(self, position: int) -> None:
        self.bits[position] = 1

    def marks(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b]

    @property
    def mark_count(self) -> int:
        return sum(self.bits)

    def covers(self, other: "Codeword") -> bool:
        """True when every mark of ``other`` is also set here."""
        return all(m for m, o in zip(self.bits, other.bits) if o)

    def to_hex(self) -> str:
        """Lowercase hex, bit j stored as bit (j mod 4) of digit j // 4."""
        digits = []
        bits = self.bits
        for i in range(0, len(bits), 4):
            value = bits[i] | (bits[i + 1] << 1) | (bits[i + 2] << 2) | (bits[i + 3] << 3)
            digits.append("%x" % value)
        return "".join(digits)

    @classmethod
    def from_hex(cls, text: str) -> "Codeword":
        if text != text.lower():
            raise ValueError("codeword hex must be lowercase")
        bits = bytearray(len(text) * 4)
        for i, ch in enumerate(text):
            value = int(ch, 16)
            base = 4 * i
            bits[base] = value & 1
            bits[base + 1] = (value >> 1) & 1
            bits[base + 2] = (value >> 2) & 1
            bits[base + 3] = (value >> 3) & 1
        return cls(bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, position: int) -> int:
        return self.bits[position]

    def __eq__(self, other) -> bool:
        return isinstance(other, Codeword) and self.bits == other.bits

    def __repr__(self) -> str:
        return f"Codeword(length={len(self.bits)}, marks={self.mark_count})"


@dataclass(frozen=True)
class CodecParams:
    """Message geometry plus the hash wiring and encoding seeds."""

    data_bits: int = 8
    checksum_bits: int = 2
    hash: HashConfig = field(default_factory=HashConfig)
    seeds: tuple[int, ...] = (DEFAULT_SEED,)

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if self.data_bits < 1:
            raise ValueError("data_bits must be at least 1")
        if self.checksum_bits < 0:
            raise ValueError("checksum_bits cannot be negative")
        if self.total_bits > 64:
            raise ValueError("total message length is capped at 64 bits")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be pairwise distinct")
        for seed in self.seeds:
            if not 1 <= seed < (1 << self.hash.width):
                raise ValueError(f"seed {seed:#x} out of range for width {self.hash.width}")

    @property
    def total_bits(self) -> int:
        return self.data_bits + self.checksum_bits

    @property
    def codeword_length(self) -> int:
        return self.hash.codeword_length

    def hash_with_seed(self, seed: int) -> HashConfig:
        return replace(self.hash, seed=seed)


@dataclass(frozen=True)
class GapMask:
    """Sorted, non-overlapping (start, length) intervals of suspected erasure."""

    intervals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple((int(s), int(n)) for s, n in self.intervals))
        previous_end = None
        for start, length in self.intervals:
            if start < 0 or length < 1:
                raise ValueError(f"bad interval ({start}, {length})")
            if previous_end is not None and start < previous_end:
                raise ValueError("intervals must be sorted and non-overlapping")
            previous_end = start + length

    def __contains__(self, position: int) -> bool:
        for start, length in self.intervals:
            if start <= position < start + length:
                return True
            if position < start:
                return False
        return False

    def total(self) -> int:
        return sum(length for _, length in self.intervals)

    def end(self) -> int:
        return self.intervals[-1][0] + self.intervals[-1][1] if self.intervals else 0

    def lookup(self, length: int) -> bytearray:
        """Membership table over a codeword of the given length."""
        table = bytearray(length)
        for start, run in self.intervals:
            table[start:start + run] = b"\x01" * run
        return table


@dataclass(frozen=True)
class DecodeReport:
    """Outcome of one decode: messages, tree statistics, and the gaps honoured."""

    messages: tuple[int, ...]
    per_seed_messages: tuple[tuple[int, ...], ...]
    branches_per_round: tuple[int, ...]
    hash_calls: int
    gaps: GapMask
    duration: float

    @property
    def common_messages(self) -> tuple[int, ...]:
        """Intersection across seeds; exposed, never applied silently."""
        common = set(self.per_seed_messages[0])
        for seed_messages in self.per_seed_messages[1:]:
            common &= set(seed_messages)
        return tuple(sorted(common))


def message_bits(params: CodecParams, message: int) -> list[int]:
    """Absorption order: data bits LSB first, then constant-zero checksums."""
    if not 0 <= message < (1 << params.data_bits):
        raise ValueError(f"message {message:#x} out of range for {params.data_bits} data bits")
    bits = [(message >> i) & 1 for i in range(params.data_bits)]
    bits.extend([0] * params.checksum_bits)
    return bits


def encode_message(params: CodecParams, message: int, seed: int | None = None) -> list[int]:
    """Mark addresses for one message under one seed, in absorption order."""
    if seed is None:
        seed = params.seeds[0]
    return hash_prefix(params.hash_with_seed(seed), message_bits(params, message))


def encode_set(params: CodecParams, messages) -> Codeword:
    """OR-superposition of every message under every configured seed.

    Duplicate messages collapse; an empty set is a legal all-zero codeword.
    """
    codeword = Codeword.zeros(params.codeword_length)
    bits = codeword.bits
    for seed in params.seeds:
        for message in set(messages):
            for address in encode_message(params, message, seed):
                bits[address] = 1
    return codeword


def detect_gaps(codeword: Codeword, min_gap: int) -> GapMask:
    """Maximal zero runs of at least ``min_gap`` bits; runs never wrap."""
    if min_gap < 1:
        raise ValueError("min_gap must be at least 1")
    intervals = []
    run_start = None
    for position, bit in enumerate(codeword.bits):
        if bit:
            if run_start is not None and position - run_start >= min_gap:
                intervals.append((run_start, position - run_start))
            run_start = None
        elif run_start is None:
            run_start = position
    if run_start is not None and len(codeword.bits) - run_start >= min_gap:
        intervals.append((run_start, len(codeword.bits) - run_start))
    return GapMask(tuple(intervals))


def gap_threshold(m_min: int, codeword_length: int, bits_per_message: int,
                  p_max: float) -> int:
    """Smallest zero-run length whose accidental probability is below ``p_max``.

    Uses the Poisson empty-block probability at the mark density produced
    by ``m_min`` messages; the result is the default detector setting.
    """
    if m_min < 1:
        raise ValueError("m_min must be at least 1")
    if not 0.0 < p_max < 1.0:
        raise ValueError("p_max must lie strictly between 0 and 1")
    for block in range(1, codeword_length):
        if model.gap_block_probability(m_min, block, codeword_length, bits_per_message) <= p_max:
            return block
    return codeword_length


def _decode_single_seed(params: CodecParams, bits, wild, seed: int):
    config = params.hash
    taps_mask = config.taps_mask
    register_mask = config.register_mask
    clocks = config.clocks_per_bit
    single_clock = clocks == 1
    data_bits = params.data_bits

    branches: list[tuple[int, int]] = [(seed, 0)]
    counts: list[int] = []
    calls = 0
    for round_index in range(params.total_bits):
        survivors: list[tuple[int, int]] = []
        append = survivors.append
        if round_index < data_bits:
            value_bit = 1 << round_index
            calls += 2 * len(branches)
            for register, value in branches:
                if single_clock:
                    zero_child = ((register << 1) & register_mask) | (
                        (register & taps_mask).bit_count() & 1
                    )
                    one_child = zero_child ^ 1
                else:
                    zero_child = step_register(register, 0, taps_mask, register_mask, clocks)
                    one_child = step_register(register, 1, taps_mask, register_mask, clocks)
                if bits[zero_child] or wild[zero_child]:
                    append((zero_child, value))
                if bits[one_child] or wild[one_child]:
                    append((one_child, value | value_bit))
        else:
            # Checksum rounds: the encoded bit is known to be zero, so only
            # that extension is ever spawned.
            calls += len(branches)
            for register, value in branches:
                child = step_register(register, 0, taps_mask, register_mask, clocks)
                if bits[child] or wild[child]:
                    append((child, value))
        branches = survivors
        counts.append(len(branches))
    values = sorted({value for _, value in branches})
    return values, counts, calls


def decode(params: CodecParams, received: Codeword, gaps: GapMask | None = None) -> DecodeReport:
    """Breadth-first tree decode of a received codeword.

    A branch survives a round when its mark is present or its address lies
    inside ``gaps`` (a branch pointing into a declared gap is retained no
    matter the round). With several seeds the decode runs once per seed;
    the report carries the per-seed message sets, their union as
    ``messages``, and branch/call counts summed over seeds.
    """
    start = time.perf_counter()
    length = params.codeword_length
    if len(received) != length:
        raise ValueError(
            f"codeword length {len(received)} does not match configured {length}"
        )
    mask = gaps if gaps is not None else GapMask()
    if mask.end() > length:
        raise ValueError("gap mask extends past the codeword")
    wild = mask.lookup(length)
    bits = received.bits

    per_seed = []
    total_counts = [0] * params.total_bits
    calls = 0
    for seed in params.seeds:
        values, counts, seed_calls = _decode_single_seed(params, bits, wild, seed)
        per_seed.append(tuple(values))
        calls += seed_calls
        for i, count in enumerate(counts):
            total_counts[i] += count

    union = set()
    for values in per_seed:
        union.update(values)
    return DecodeReport(
        messages=tuple(sorted(union)),
        per_seed_messages=tuple(per_seed),
        branches_per_round=tuple(total_counts),
        hash_calls=calls,
        gaps=mask,
        duration=time.perf_counter() - start,
    )


def count_hallucinations(report: DecodeReport, truth) -> int:
    """Decoded messages that were never encoded; missing ones never count."""
    return len(set(report.messages) - set(truth))
