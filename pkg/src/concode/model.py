"""Closed-form predictions for mark counts, decoding load, and thresholds.

All quantities are per encoded message length ``bits_per_message`` (data
plus checksum bits) and codeword length ``codeword_length``; noise and
gap fractions are relative to the codeword length. These are the curves
the experiment harness plots beside its measurements.
"""

import math
from dataclasses import dataclass
from statistics import NormalDist

_NORMAL = NormalDist()
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    """Inputs to the branch/hallucination model."""

    messages: int
    bits_per_message: int = 10
    checksum_bits: int = 2
    codeword_length: int = 2048
    noise_fraction: float = 0.0
    gap_fraction: float = 0.0
    a_mode: str = "floor"

    def __post_init__(self):
        if self.messages < 1:
            raise ValueError("messages must be at least 1")
        if self.bits_per_message - self.checksum_bits < 1:
            raise ValueError("at least one data bit is required")
        if self.messages > 1 << (self.bits_per_message - self.checksum_bits):
            raise ValueError("more messages than the data bits can express")
        if self.noise_fraction + self.gap_fraction > 1.0:
            raise ValueError("noise and gap fractions cannot exceed 1 combined")
        if self.a_mode not in ("floor", "continuous"):
            raise ValueError(f"unknown a_mode {self.a_mode!r}")

    @property
    def shared_depth(self) -> float:
        """Expected fully-shared prefix depth for the message population."""
        depth = math.log2(self.messages)
        return float(math.floor(depth)) if self.a_mode == "floor" else depth

    @property
    def data_rounds(self) -> int:
        return self.bits_per_message - self.checksum_bits

    @property
    def corruption_fraction(self) -> float:
        return self.noise_fraction + self.gap_fraction


def marks_expected(messages: float, bits_per_message: int) -> float:
    """Estimated codeword marks for a message population, net of sharing."""
    if messages < 0:
        raise ValueError("messages cannot be negative")
    if messages == 0:
        return 0.0
    return bits_per_message * messages - messages * math.log2(messages)


def lambert_w_series(x: float, terms: int = 30) -> float:
    """Principal-branch Lambert W via its power series around zero.

    Reliable only for |x| well inside 1/e; term n is
    (-1)^(n-1) * n^(n-2) / (n-1)! * x^n.
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    total = 0.0
    for n in range(1, terms + 1):
        coefficient = (-1) ** (n - 1) * (n ** (n - 2) if n >= 2 else 1)
        total += coefficient * x ** n / math.factorial(n - 1)
    return total


def messages_from_marks_series(marks: float, bits_per_message: int,
                               terms: int = 30) -> float:
    """Series inversion of the mark-count estimate.

    The principal-branch series selects the larger of the two roots of the
    mark-count relation (an 11-bit example: 10 marks inverts to roughly
    1017 messages, not 1); use the numeric inversion for the physically
    small root.
    """
    if marks < 0:
        raise ValueError("marks cannot be negative")
    if marks == 0:
        return 0.0
    x = -(2.0 ** -bits_per_message) * marks * math.log(2.0)
    if abs(x) >= 0.4:
        raise ValueError(f"series argument {x:.4f} outside its reliable domain |x| < 0.4")
    w = lambert_w_series(x, terms)
    return -marks * math.log(2.0) / w


def max_encodable_marks(bits_per_message: int) -> float:
    """Peak of the mark-count estimate, reached at 2^bits / e messages."""
    peak_messages = (1 << bits_per_message) / math.e
    return marks_expected(peak_messages, bits_per_message)


def messages_from_marks_numeric(marks: float, bits_per_message: int) -> float:
    """Small-root inversion of the mark-count estimate by bisection.

    Valid for mark counts up to the curve's maximum; monotone on that
    range and exact to |delta marks| < 1e-9.
    """
    if marks < 0:
        raise ValueError("marks cannot be negative")
    if marks == 0:
        return 0.0
    high = (1 << bits_per_message) / math.e
    if marks > marks_expected(high, bits_per_message) + 1e-9:
        raise ValueError(f"{marks} marks exceed the attainable maximum")
    low = 0.0
    for _ in range(200):
        mid = 0.5 * (low + high)
        value = marks_expected(mid, bits_per_message)
        if abs(value - marks) < 1e-9:
            return mid
        if value < marks:
            low = mid
        else:
            high = mid
    return 0.5 * (low + high)


def gap_block_probability(messages: int, block_length: int, codeword_length: int,
                          bits_per_message: int = 10) -> float:
    """Poisson chance of an accidental all-zero block of the given length."""
    if not 1 <= block_length < codeword_length:
        raise ValueError("block_length must lie in [1, codeword_length)")
    density = marks_expected(messages, bits_per_message) / codeword_length
    empty_cell = math.exp(-density)
    return ((codeword_length - block_length) / codeword_length) * empty_cell ** block_length


def live_branches(round_index: int, params: ModelParams) -> float:
    """Expected live decoding branches after the given round.

    All prefixes stay live while the tree is narrower than the message
    population; past that, false branches decay geometrically with the
    combined noise plus gap fraction, and checksum rounds stop spawning.
    """
    if not 1 <= round_index <= params.bits_per_message:
        raise ValueError("round_index outside the message length")
    m = params.messages
    if (1 << round_index) <= m:
        return float(1 << round_index)
    q = params.corruption_fraction
    a = params.shared_depth
    exponent = round_index - a + 1
    cap_round = min(round_index, params.data_rounds)
    return m + ((1 << cap_round) - m) * q ** exponent


def expected_hallucinations(params: ModelParams) -> float:
    """False messages expected at the end of the tree."""
    return live_branches(params.bits_per_message, params) - params.messages


def computational_load(params: ModelParams) -> float:
    """Hash calls over a full decode: two per branch while rounds spawn,
    one per branch through the checksum rounds."""
    total = 0.0
    for round_index in range(1, params.bits_per_message + 1):
        weight = 2.0 if round_index <= params.data_rounds else 1.0
        total += weight * live_branches(round_index, params)
    return total


def hallucination_threshold(messages: int, bits_per_message: int = 10,
                            checksum_bits: int = 2, a_mode: str = "floor") -> float:
    """Combined noise plus gap fraction at which one hallucination is expected."""
    params = ModelParams(
        messages=messages,
        bits_per_message=bits_per_message,
        checksum_bits=checksum_bits,
        a_mode=a_mode,
    )
    spawn_pool = (1 << params.data_rounds) - messages
    if spawn_pool <= 0:
        raise ValueError("message count saturates the data rounds")
    exponent = 1.0 / (bits_per_message - params.shared_depth + 1.0)
    return (1.0 / spawn_pool) ** exponent


def marks_threshold_curve(message_range, bits_per_message: int = 10,
                          checksum_bits: int = 2, codeword_length: int = 1024,
                          a_mode: str = "continuous") -> list[tuple[int, float]]:
    """Total marks (messages plus corruption) at the hallucination onset.

    The sum of a falling threshold term and the rising mark-count term;
    the continuous sharing depth keeps the curve free of power-of-two
    jumps.
    """
    curve = []
    for messages in message_range:
        threshold = hallucination_threshold(
            messages, bits_per_message, checksum_bits, a_mode
        )
        marks = codeword_length * threshold + marks_expected(messages, bits_per_message)
        curve.append((messages, marks))
    return curve


def inverse_erf(y: float) -> float:
    """Inverse error function via the Gaussian quantile."""
    if not -1.0 < y < 1.0:
        raise ValueError("inverse_erf is defined on (-1, 1)")
    return _NORMAL.inv_cdf((y + 1.0) / 2.0) / _SQRT2


def signal_threshold(noise_mean: float, noise_sigma: float,
                     false_mark_rate: float) -> float:
    """Detection level whose Gaussian upper-tail probability is the target rate."""
    if not 0.0 < false_mark_rate < 1.0:
        raise ValueError("false_mark_rate must lie strictly between 0 and 1")
    return _SQRT2 * noise_sigma * inverse_erf(1.0 - 2.0 * false_mark_rate) + noise_mean


def required_snr(sigma_over_mean: float, messages: int, bits_per_message: int = 10,
                 checksum_bits: int = 2, a_mode: str = "continuous") -> float:
    """Threshold-to-mean ratio needed to keep false marks below the
    hallucination onset for the given message count."""
    rate = hallucination_threshold(messages, bits_per_message, checksum_bits, a_mode)
    return _SQRT2 * sigma_over_mean * inverse_erf(1.0 - 2.0 * rate) + 1.0
