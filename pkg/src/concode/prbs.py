"""Progressive LFSR hash turning message-bit prefixes into codeword addresses.

The register shifts once per absorbed bit and the message bit is XORed
into the feedback path, so the register value after each absorption
depends on the current bit and every bit before it. That register value
is the address of the mark placed for the prefix absorbed so far, which
is what lets a decoder grow candidate prefixes one bit at a time and
check each extension against the received codeword.
"""

from dataclasses import dataclass
from importlib import resources

DEFAULT_WIDTH = 11
DEFAULT_TAPS = frozenset((10, 8))  # x^11 + x^9 + 1, maximal length
DEFAULT_SEED = 0x001


@dataclass(frozen=True)
class HashConfig:
    """Wiring of the hashing register.

    ``taps`` are 0-based register bit indices feeding the XOR network.
    Addresses are full register values, so the address space has
    ``2 ** width`` cells.
    """

    width: int = DEFAULT_WIDTH
    taps: frozenset[int] = DEFAULT_TAPS
    seed: int = DEFAULT_SEED
    clocks_per_bit: int = 1

    def __post_init__(self):
        object.__setattr__(self, "taps", frozenset(self.taps))
        if self.width < 4:
            raise ValueError(f"width must be at least 4, got {self.width}")
        if not self.taps:
            raise ValueError("taps must be nonempty")
        if any(t < 0 or t >= self.width for t in self.taps):
            raise ValueError(
                f"taps {sorted(self.taps)} fall outside register width {self.width}"
            )
        if not 1 <= self.seed < (1 << self.width):
            raise ValueError(
                f"seed must lie in [1, 2^width - 1], got {self.seed:#x}"
            )
        if self.clocks_per_bit < 1:
            raise ValueError("clocks_per_bit must be at least 1")

    @property
    def register_mask(self) -> int:
        return (1 << self.width) - 1

    @property
    def taps_mask(self) -> int:
        mask = 0
        for tap in self.taps:
            mask |= 1 << tap
        return mask

    @property
    def codeword_length(self) -> int:
        return 1 << self.width


@dataclass(frozen=True)
class HashState:
    """Snapshot of the register plus how many bits produced it."""

    register: int
    absorbed: int = 0


def init_state(config: HashConfig) -> HashState:
    """Fresh state: register holds the seed, nothing absorbed yet."""
    return HashState(register=config.seed, absorbed=0)


def step_register(register: int, bit: int, taps_mask: int, register_mask: int,
                  clocks: int = 1) -> int:
    """Advance a raw register value by one absorbed bit (``clocks`` shifts)."""
    for _ in range(clocks):
        feedback = ((register & taps_mask).bit_count() ^ bit) & 1
        register = ((register << 1) & register_mask) | feedback
    return register


def absorb_bit(config: HashConfig, state: HashState, bit: int) -> tuple[HashState, int]:
    """Absorb one message bit; returns the new state and the mark address.

    The all-zero register is reachable once message bits are injected and
    address 0 is a legal mark position; only the initial seed is barred
    from zero.
    """
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    register = step_register(
        state.register, bit, config.taps_mask, config.register_mask,
        config.clocks_per_bit,
    )
    return HashState(register, state.absorbed + 1), register


def hash_prefix(config: HashConfig, bits) -> list[int]:
    """Mark addresses for every prefix of ``bits``.

    Output i is the address after absorbing bits[0..i]; a prefix of the
    input always yields a prefix of the output.
    """
    bits = list(bits)
    if not bits:
        raise ValueError("bit sequence must be nonempty")
    taps_mask = config.taps_mask
    register_mask = config.register_mask
    clocks = config.clocks_per_bit
    register = config.seed
    addresses = []
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {bit!r}")
        register = step_register(register, bit, taps_mask, register_mask, clocks)
        addresses.append(register)
    return addresses


def zero_input_period(config: HashConfig, cap: int | None = None) -> int:
    """Steps until the register revisits the seed while absorbing zeros.

    For a maximal-length tap set this is ``2 ** width - 1`` whenever the
    seed is nonzero.
    """
    limit = cap if cap is not None else (1 << config.width) + 1
    taps_mask = config.taps_mask
    register_mask = config.register_mask
    register = config.seed
    for steps in range(1, limit + 1):
        register = step_register(register, 0, taps_mask, register_mask)
        if register == config.seed:
            return steps
    raise RuntimeError(f"register did not cycle within {limit} steps")


def load_golden_vectors() -> list[tuple[int, str, list[int]]]:
    """Shipped (seed, bit string, address list) triples for bit-exactness checks."""
    text = resources.files("concode").joinpath("data/prbs_golden.txt").read_text()
    vectors = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        seed_text, bit_text, addr_text = line.split()
        vectors.append(
            (int(seed_text, 16), bit_text, [int(a, 16) for a in addr_text.split(",")])
        )
    return vectors
