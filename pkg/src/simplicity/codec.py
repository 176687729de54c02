"""Positional codes for designating elements of a known list.

The i-th element of a list is designated by the i-th word of the
enumeration ``"", "0", "1", "00", "01", "10", "11", "000", ...``. The first
element costs nothing once the list itself is known. Words are not
self-delimiting: they describe one object, they are not meant to be
concatenated into a stream.

On a bounded list the two extremities are the simplest elements, so a
second enumeration walks the list from both ends inwards.
"""

from __future__ import annotations

from dataclasses import dataclass


def _check_index(index: int) -> None:
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}")


def code_word(index: int) -> str:
    """Return the positional code word of ``index`` as a '0'/'1' string, MSB first.

    >>> [code_word(i) for i in range(8)]
    ['', '0', '1', '00', '01', '10', '11', '000']
    """
    _check_index(index)
    # binary of index+1 without its leading 1
    return bin(index + 1)[3:]


def code_length(index: int) -> int:
    """Length in bits of ``code_word(index)``, i.e. ``floor(log2(index + 1))``."""
    _check_index(index)
    return (index + 1).bit_length() - 1


def average_code_length(n: int) -> float:
    """Mean code length over the first ``n`` elements of a list.

    Computed in closed form: lengths come in blocks of ``2**k`` words of
    length ``k``.
    """
    if n < 1:
        raise ValueError(f"list size must be positive, got {n}")
    total = 0
    remaining = n
    k = 0
    while remaining > 0:
        block = min(remaining, 1 << k)
        total += k * block
        remaining -= block
        k += 1
    return total / n


@dataclass(frozen=True)
class RemarkableRank:
    position: int
    domain_size: int
    rank: int
    bits: int


def _check_domain(position: int, domain_size: int) -> None:
    if domain_size < 1:
        raise ValueError(f"domain size must be positive, got {domain_size}")
    if not 0 <= position < domain_size:
        raise ValueError(f"position {position} outside domain [0, {domain_size})")


def remarkable_complexity(position: int, domain_size: int) -> int:
    """Bits needed to designate ``position`` on a bounded list of ``domain_size`` cells.

    Extremities are free. Any other cell costs one bit to pick the end it is
    counted from, plus the positional code of its offset from that end.
    """
    _check_domain(position, domain_size)
    offset = min(position, domain_size - 1 - position)
    if offset == 0:
        return 0
    return 1 + code_length(offset)


def remarkable_rank(position: int, domain_size: int) -> RemarkableRank:
    """Place of ``position`` in the ends-inward enumeration 0, N-1, 1, N-2, ..."""
    _check_domain(position, domain_size)
    offset = min(position, domain_size - 1 - position)
    rank = 2 * offset if position == offset else 2 * offset + 1
    return RemarkableRank(position, domain_size, rank, remarkable_complexity(position, domain_size))
