"""On-disk formats: CCW v1 codewords and plain hex message lists.

A codeword file is a header line ``CCW v1 W=<width> marks=<count>``
followed by the bit array as lowercase hex, one digit per four codeword
bits with bit j stored as bit (j mod 4) of digit j // 4. A message list
is one hex value per line.
"""

from pathlib import Path

from .codec import Codeword


class FileFormatError(ValueError):
    """Raised when an input file does not match its declared format."""


def write_codeword(path, codeword: Codeword, width: int) -> None:
    if len(codeword) != 1 << width:
        raise FileFormatError(
            f"codeword of {len(codeword)} bits does not match width {width}"
        )
    text = f"CCW v1 W={width} marks={codeword.mark_count}\n{codeword.to_hex()}\n"
    Path(path).write_text(text)


def read_codeword(path) -> tuple[Codeword, int]:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 2:
        raise FileFormatError(f"{path}: expected a header line and a hex line")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "CCW" or header[1] != "v1" \
            or not header[2].startswith("W=") or not header[3].startswith("marks="):
        raise FileFormatError(f"{path}: malformed header {lines[0]!r}")
    try:
        width = int(header[2][2:])
        declared_marks = int(header[3][6:])
    except ValueError as exc:
        raise FileFormatError(f"{path}: malformed header {lines[0]!r}") from exc
    hex_text = lines[1].strip()
    if len(hex_text) != (1 << width) // 4:
        raise FileFormatError(
            f"{path}: expected {(1 << width) // 4} hex digits, found {len(hex_text)}"
        )
    try:
        codeword = Codeword.from_hex(hex_text)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    if codeword.mark_count != declared_marks:
        raise FileFormatError(
            f"{path}: header declares {declared_marks} marks, body has {codeword.mark_count}"
        )
    return codeword, width


def write_messages(path, messages, data_bits: int = 8) -> None:
    digits = max(2, (data_bits + 3) // 4)
    lines = [format(m, f"0{digits}x") for m in messages]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_messages(path) -> list[int]:
    messages = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            messages.append(int(line, 16))
        except ValueError as exc:
            raise FileFormatError(f"{path}:{lineno}: not a hex value: {line!r}") from exc
    return messages
