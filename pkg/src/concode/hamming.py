"""Extended Hamming(8,4) baseline with cross-interleaving into a 2048-bit frame.

Each byte splits into two nibbles, each nibble becomes an 8-bit extended
Hamming block (single-error correcting, double-error detecting), and the
128 resulting 16-bit words are spread across 16 sections of 128 bits.
Section order alternates between the two blocks of a word so that any
contiguous gap spanning at most two sections erases at most one bit per
block, which single-error correction absorbs. Erased bits arrive as
zeros, so the scheme fails gracefully rather than losing sync.
"""

from dataclasses import dataclass

from .codec import Codeword

STATUS_CLEAN = "clean"
STATUS_CORRECTED = "corrected"
STATUS_UNCORRECTABLE = "uncorrectable"

FRAME_BITS = 2048
WORDS_PER_FRAME = 128
SECTIONS = 16
SECTION_BITS = FRAME_BITS // SECTIONS

# Block layout, bit index 0..7: p1 p2 d0 p4 d1 d2 d3 px
_DATA_POSITIONS = (2, 4, 5, 6)


def _encode_nibble(nibble: int) -> int:
    d0 = nibble & 1
    d1 = (nibble >> 1) & 1
    d2 = (nibble >> 2) & 1
    d3 = (nibble >> 3) & 1
    p1 = d0 ^ d1 ^ d3
    p2 = d0 ^ d2 ^ d3
    p4 = d1 ^ d2 ^ d3
    block = p1 | (p2 << 1) | (d0 << 2) | (p4 << 3) | (d1 << 4) | (d2 << 5) | (d3 << 6)
    return block | (block.bit_count() & 1) << 7


def _extract_data(block: int) -> int:
    return ((block >> 2) & 1) | ((block >> 4) & 1) << 1 | ((block >> 5) & 1) << 2 | ((block >> 6) & 1) << 3


def _decode_block(block: int) -> tuple[int, str]:
    syndrome = ((block & 0b01010101).bit_count() & 1) \
        | ((block & 0b01100110).bit_count() & 1) << 1 \
        | ((block & 0b01111000).bit_count() & 1) << 2
    overall = block.bit_count() & 1
    if overall:
        # Odd parity: a single flip, either at syndrome position or at the
        # parity bit itself when the syndrome is clean.
        if syndrome:
            block ^= 1 << (syndrome - 1)
        return _extract_data(block), STATUS_CORRECTED
    if syndrome:
        # Even parity with nonzero syndrome: two flips. Pass the data bits
        # through as received.
        return _extract_data(block), STATUS_UNCORRECTABLE
    return _extract_data(block), STATUS_CLEAN


ENCODE_LUT = tuple(_encode_nibble(n) for n in range(16))
DECODE_LUT = tuple(_decode_block(b) for b in range(256))


def hamming84_encode(nibble: int) -> int:
    """Extended Hamming block for a 4-bit value; linear, distance 4."""
    if not 0 <= nibble < 16:
        raise ValueError(f"nibble {nibble!r} out of range")
    return ENCODE_LUT[nibble]


def hamming84_decode(block: int) -> tuple[int, str]:
    """(data nibble, status); single flips corrected, double flips flagged."""
    if not 0 <= block < 256:
        raise ValueError(f"block {block!r} out of range")
    return DECODE_LUT[block]


def word_bit_for_section(section: int) -> int:
    """Which bit of every 16-bit word a section carries.

    Even sections walk the first block's bits, odd sections the second
    block's, so adjacent sections always land in different blocks.
    """
    return section // 2 if section % 2 == 0 else 8 + (section - 1) // 2


def interleave(words) -> Codeword:
    """Spread 128 coded words across the frame's 16 sections."""
    words = list(words)
    if len(words) != WORDS_PER_FRAME:
        raise ValueError(f"expected {WORDS_PER_FRAME} words, got {len(words)}")
    frame = Codeword.zeros(FRAME_BITS)
    bits = frame.bits
    for section in range(SECTIONS):
        word_bit = word_bit_for_section(section)
        base = section * SECTION_BITS
        for index, word in enumerate(words):
            bits[base + index] = (word >> word_bit) & 1
    return frame


def deinterleave(frame: Codeword) -> list[int]:
    """Rebuild the 128 words from a frame; inverse of interleave."""
    if len(frame) != FRAME_BITS:
        raise ValueError(f"frame must be {FRAME_BITS} bits, got {len(frame)}")
    words = [0] * WORDS_PER_FRAME
    bits = frame.bits
    for section in range(SECTIONS):
        word_bit = word_bit_for_section(section)
        base = section * SECTION_BITS
        for index in range(WORDS_PER_FRAME):
            if bits[base + index]:
                words[index] |= 1 << word_bit
    return words


@dataclass(frozen=True)
class HammingReport:
    """Decoded slots plus the error fraction over the genuine ones."""

    decoded: tuple[int, ...]
    statuses: tuple[tuple[str, str], ...]
    error_fraction: float


def encode_frame(messages) -> Codeword:
    """Hamming-encode up to 128 bytes and interleave; unused slots are zero."""
    messages = list(messages)
    if len(messages) > WORDS_PER_FRAME:
        raise ValueError(f"at most {WORDS_PER_FRAME} messages fit one frame")
    words = []
    for message in messages:
        if not 0 <= message < 256:
            raise ValueError(f"message {message!r} is not a byte")
        words.append(ENCODE_LUT[message & 0xF] | ENCODE_LUT[message >> 4] << 8)
    words.extend([0] * (WORDS_PER_FRAME - len(words)))
    return interleave(words)


def decode_frame(frame: Codeword, genuine) -> HammingReport:
    """Deinterleave and decode every slot, scoring the genuine ones.

    ``genuine`` is the transmitted message list; the error fraction is the
    share of those slots that decoded to a different byte.
    """
    genuine = list(genuine)
    if len(genuine) > WORDS_PER_FRAME:
        raise ValueError(f"at most {WORDS_PER_FRAME} genuine messages per frame")
    decoded = []
    statuses = []
    for word in deinterleave(frame):
        low, low_status = DECODE_LUT[word & 0xFF]
        high, high_status = DECODE_LUT[word >> 8]
        decoded.append(low | high << 4)
        statuses.append((low_status, high_status))
    wrong = sum(1 for sent, got in zip(genuine, decoded) if sent != got)
    fraction = wrong / len(genuine) if genuine else 0.0
    return HammingReport(
        decoded=tuple(decoded), statuses=tuple(statuses), error_fraction=fraction
    )
