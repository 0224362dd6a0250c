"""Codeword corruption: additive random marks, burst gaps, and an analog layer.

The binary channel is asymmetric: interference can set bits (0 to 1) but
never clear them, while physical blockage zeroes contiguous spans. The
analog helpers model the detector that turns received amplitudes back
into a binary codeword by thresholding.
"""

from dataclasses import dataclass, field

import numpy as np

from .codec import Codeword


@dataclass
class RngStream:
    """Named deterministic generator; one stream owns one trial's randomness."""

    seed: int
    algorithm: str = "pcg64"
    _generator: np.random.Generator | None = field(
        default=None, repr=False, compare=False
    )

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            if self.algorithm != "pcg64":
                raise ValueError(f"unknown rng algorithm {self.algorithm!r}")
            self._generator = np.random.Generator(np.random.PCG64(self.seed))
        return self._generator


@dataclass(frozen=True)
class AnalogCodeword:
    """Per-cell amplitudes: signal on marked cells plus Gaussian noise everywhere."""

    amplitudes: np.ndarray
    signal_amplitude: float
    noise_mean: float
    noise_sigma: float


def db_to_marks(level_db: float, marks_per_message: int) -> int:
    """Mark count for a noise level where 0 dB is one message's worth of marks."""
    if marks_per_message < 1:
        raise ValueError("marks_per_message must be at least 1")
    return round(marks_per_message * 10.0 ** (level_db / 10.0))


def add_random_marks(codeword: Codeword, count: int, rng: RngStream) -> Codeword:
    """Set ``count`` distinct uniformly chosen positions to 1.

    Distinct positions make the noise fraction exact; cells already
    carrying a mark stay marked, so the result covers the input.
    """
    length = len(codeword)
    if not 0 <= count <= length:
        raise ValueError(f"count {count} outside [0, {length}]")
    noisy = codeword.copy()
    if count:
        positions = rng.generator.choice(length, size=count, replace=False)
        bits = noisy.bits
        for position in positions:
            bits[position] = 1
    return noisy


def cut_gap(codeword: Codeword, start: int, length: int) -> Codeword:
    """Zero the span [start, start + length); gaps never wrap."""
    size = len(codeword)
    if length < 0:
        raise ValueError("gap length cannot be negative")
    if not 0 <= start < size or start + length > size:
        raise ValueError(f"gap [{start}, {start + length}) outside codeword of {size}")
    cut = codeword.copy()
    cut.bits[start:start + length] = b"\x00" * length
    return cut


def flip_random_bits(codeword: Codeword, count: int, rng: RngStream) -> Codeword:
    """Invert ``count`` distinct positions (binary symmetric channel).

    Only the Hamming baseline uses this; the concurrent channel never
    clears marks.
    """
    length = len(codeword)
    if not 0 <= count <= length:
        raise ValueError(f"count {count} outside [0, {length}]")
    flipped = codeword.copy()
    if count:
        positions = rng.generator.choice(length, size=count, replace=False)
        bits = flipped.bits
        for position in positions:
            bits[position] ^= 1
    return flipped


def to_analog(codeword: Codeword, signal_amplitude: float, noise_mean: float,
              noise_sigma: float, rng: RngStream) -> AnalogCodeword:
    """Amplitude per cell: signal on marks plus independent Normal noise."""
    if noise_sigma < 0:
        raise ValueError("noise_sigma cannot be negative")
    marks = np.frombuffer(bytes(codeword.bits), dtype=np.uint8).astype(np.float64)
    noise = rng.generator.normal(noise_mean, noise_sigma, len(codeword))
    return AnalogCodeword(
        amplitudes=signal_amplitude * marks + noise,
        signal_amplitude=signal_amplitude,
        noise_mean=noise_mean,
        noise_sigma=noise_sigma,
    )


def threshold_detect(analog: AnalogCodeword, threshold: float) -> Codeword:
    """Mark every cell whose amplitude exceeds the threshold."""
    detected = analog.amplitudes > threshold
    return Codeword(bytearray(detected.astype(np.uint8).tobytes()))
