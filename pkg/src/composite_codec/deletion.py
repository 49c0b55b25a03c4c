"""Single-deletion-correcting codes for two-channel composite sequences.

Binary building block: checksum codes with membership
sum(i * x_i) = label (mod n+1), which recover one deleted bit from the
checksum residue.

Composite constructions (k = 2 throughout):

* first-channel protection: put row 0 in a binary checksum code
  (membership) or append a marker pair plus ternary syndrome digits
  (systematic);
* either-channel protection: put the concatenation row0+row1 in one long
  checksum code (membership), or protect the concatenation with the
  ternary syndrome machinery and a marker that also survives not knowing
  which channel shrank (systematic).

Decoders take the received rows; which channel lost a bit is visible from
the row lengths.
"""

from __future__ import annotations

from composite_codec.bounds import ceil_log
from composite_codec.core import (
    UNKNOWN,
    DomainError,
    all_sequences,
    decompose_sequence,
    reconstruct_rows,
)
from composite_codec.substitution import DecodeFailure


def _check_binary(x):
    if any(b not in (0, 1) for b in x):
        raise DomainError(f"not a binary word: {x!r}")


def delete_at(x, pos: int):
    if not 0 <= pos < len(x):
        raise DomainError(f"deletion position {pos} out of range")
    return tuple(x[:pos]) + tuple(x[pos + 1:])


def distinct_deletions(x):
    """All distinct words obtainable by deleting one symbol (one per run)."""
    return {delete_at(x, p) for p in range(len(x))}


# ---------------------------------------------------------------------------
# binary single-deletion checksum codes


def vt_syndrome(x) -> int:
    """Position-weighted bit sum, positions 1-based (not yet reduced)."""
    return sum(i * b for i, b in enumerate(x, start=1))


def vt_membership(x, label: int) -> bool:
    _check_binary(x)
    n = len(x)
    if not 0 <= label <= n:
        raise DomainError(f"label {label} out of range for n={n}")
    return vt_syndrome(x) % (n + 1) == label


def vt_enumerate(n: int, label: int):
    for x in all_sequences(n, 1):
        if vt_syndrome(x) % (n + 1) == label:
            yield x


def vt_decode(y, n: int, label: int):
    """Reinsert the single deleted bit of a length-n checksum codeword.

    The residue d = label - syndrome(y) counts, for a deleted zero, the
    ones to its right; for a deleted one, w + 1 + the zeros to its left.
    """
    y = tuple(y)
    _check_binary(y)
    if len(y) != n - 1:
        raise DomainError(f"expected length {n - 1}, got {len(y)}")
    if not 0 <= label <= n:
        raise DomainError(f"label {label} out of range for n={n}")
    w = sum(y)
    d = (label - vt_syndrome(y)) % (n + 1)
    if d <= w:
        ones_right = 0
        pos = len(y)
        while ones_right < d:
            pos -= 1
            ones_right += y[pos]
        return y[:pos] + (0,) + y[pos:]
    zeros_left, pos = 0, 0
    while zeros_left < d - w - 1:
        zeros_left += 1 - y[pos]
        pos += 1
    return y[:pos] + (1,) + y[pos:]


# ---------------------------------------------------------------------------
# ternary single-deletion syndromes (shared by the systematic constructions)


def _check_ternary(s):
    if any(v not in (0, 1, 2) for v in s):
        raise DomainError(f"not a ternary word: {s!r}")


def ascent_syndrome(s) -> int:
    """Weighted count of non-descents: sum of j over s[j+1] >= s[j]
    (1-based j), modulo the length."""
    m = len(s)
    return sum(j for j in range(1, m) if s[j] >= s[j - 1]) % m


def _digits(value: int, base: int, width: int):
    out = []
    for _ in range(width):
        out.append(value % base)
        value //= base
    out.reverse()
    return tuple(out)


def _undigits(digits, base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def ternary_redundancy(s):
    """(marker symbol, syndrome digits) protecting s against one deletion.

    The digits are the ascent syndrome in base 3 followed by the symbol sum
    mod 3; the marker differs from the last data symbol, which frames the
    data against the tail.
    """
    _check_ternary(s)
    m = len(s)
    if m < 1:
        raise DomainError("need at least one data symbol")
    marker = (s[-1] + 1) % 3
    width = ceil_log(3, m)
    return marker, _digits(ascent_syndrome(s), 3, width) + (sum(s) % 3,)


def ternary_encode(s):
    """Systematic single-deletion codeword: data, marker twice, digits."""
    marker, digits = ternary_redundancy(s)
    return tuple(s) + (marker, marker) + digits


def ternary_decode(received, m: int):
    """Recover the length-m data from a codeword missing one symbol.

    Equal symbols at positions m, m+1 mean the deletion hit the data (the
    marker pair slid into view); the stored syndromes then pin down the
    unique reinsertion.  Unequal symbols mean the data is intact.
    """
    received = tuple(received)
    _check_ternary(received)
    if m < 1:
        raise DomainError("need at least one data symbol")
    width = ceil_log(3, m)
    if len(received) != m + width + 2:
        raise DomainError(
            f"expected length {m + width + 2}, got {len(received)}")
    if received[m - 1] != received[m]:
        return received[:m]
    marker = received[m - 1]
    digits = received[m + 1:]
    want_a = _undigits(digits[:width], 3)
    want_b = digits[width]
    last = (marker - 1) % 3
    stub = received[:m - 1]
    matches = set()
    for pos in range(m):
        for symbol in (0, 1, 2):
            cand = stub[:pos] + (symbol,) + stub[pos:]
            if (cand[-1] == last and sum(cand) % 3 == want_b
                    and ascent_syndrome(cand) == want_a):
                matches.add(cand)
    if len(matches) != 1:
        raise DecodeFailure(
            f"{len(matches)} data words match the syndromes; more than one "
            "deletion or a corrupted tail")
    return matches.pop()


# ---------------------------------------------------------------------------
# composite constructions, k = 2


def _check_k2_rows(rows):
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != 2:
        raise DomainError(f"expected 2 rows, got {len(rows)}")
    for r in rows:
        _check_binary(r)
    return rows


def _reconstruct_or_fail(rows):
    s = reconstruct_rows(rows)
    if UNKNOWN in s:
        raise DecodeFailure(
            f"rows disagree at column {s.index(UNKNOWN)}")
    return s


def _sequence_k2(s):
    s = tuple(s)
    if any(v not in (0, 1, 2) for v in s):
        raise DomainError("composite deletion codes are defined for k = 2")
    return s


# -- first-channel deletion, membership-defined


def vt_row_membership(s, label: int) -> bool:
    """Row 0 lies in the binary checksum code with the given label."""
    s = _sequence_k2(s)
    return vt_membership(decompose_sequence(s, 2)[0], label)


def vt_row_enumerate(n: int, label: int):
    for s in all_sequences(n, 2):
        if vt_membership(decompose_sequence(s, 2)[0], label):
            yield s


def vt_row_decode(rows, label: int):
    """Correct one deletion on channel 0; channel 1 arrives intact."""
    rows = _check_k2_rows(rows)
    y0, y1 = rows
    n = len(y1)
    if len(y0) != n - 1:
        raise DomainError(
            f"row 0 must be one bit short of row 1 ({len(y0)} vs {n})")
    return _reconstruct_or_fail((vt_decode(y0, n, label), y1))


# -- either-channel deletion, membership-defined


def vt_pair_membership(s, label: int) -> bool:
    """Row 0 and row 1, concatenated, lie in one long checksum code."""
    s = _sequence_k2(s)
    r0, r1 = decompose_sequence(s, 2)
    return vt_membership(r0 + r1, label)


def vt_pair_enumerate(n: int, label: int):
    for s in all_sequences(n, 2):
        r0, r1 = decompose_sequence(s, 2)
        if vt_membership(r0 + r1, label):
            yield s


def vt_pair_decode(rows, label: int):
    """Correct one deletion on whichever channel came up short: a deletion
    in either row is a single deletion in the concatenation."""
    rows = _check_k2_rows(rows)
    y0, y1 = rows
    if len(y0) == len(y1) + 1:
        n = len(y0)
    elif len(y1) == len(y0) + 1:
        n = len(y1)
    else:
        raise DomainError("exactly one row must be one bit short")
    x = vt_decode(y0 + y1, 2 * n, label)
    return _reconstruct_or_fail((x[:n], x[n:]))


# -- first-channel deletion, systematic


def _row_message_length(n: int) -> int:
    for m in range(1, n):
        if m + ceil_log(3, m) + 3 == n:
            return m
    raise DomainError(f"no message length yields codewords of length {n}")


def marker_row_encode(message):
    """Append a marker letter twice plus the ternary syndrome digits of
    row 0, all as composite letters.

    The marker letter's row-0 bit differs from row 0's last data bit, so a
    channel-0 deletion inside the data slides an equal pair into positions
    m, m+1 of row 0 -- same framing as the plain ternary codeword.
    """
    s = _sequence_k2(message)
    if not s:
        raise DomainError("message must be non-empty")
    r0, _ = decompose_sequence(s, 2)
    _, digits = ternary_redundancy(r0)
    marker_letter = 2 if r0[-1] == 0 else 0
    return s + (marker_letter, marker_letter) + digits


def marker_row_decode(rows):
    """Recover the message from (row 0 minus one bit, row 1 intact)."""
    rows = _check_k2_rows(rows)
    y0, y1 = rows
    n = len(y1)
    if len(y0) != n - 1:
        raise DomainError(
            f"row 0 must be one bit short of row 1 ({len(y0)} vs {n})")
    m = _row_message_length(n)
    width = ceil_log(3, m)
    s1 = y1[:m]
    if y0[m - 1] != y0[m]:
        return _reconstruct_or_fail((y0[:m], s1))
    # the deletion hit row 0's data; rebuild the plain ternary received word
    marker = 1 if y0[m - 1] == 1 else 2  # row-0 bit of the marker letter
    digits = _reconstruct_or_fail((y0[-(width + 1):], y1[-(width + 1):]))
    word = y0[:m - 1] + (marker, marker) + digits
    return _reconstruct_or_fail((ternary_decode(word, m), s1))


# -- either-channel deletion, systematic


_PAIR_MARKER = {0: 2, 1: 1, 2: 0}


def _pair_message_length(n: int) -> int:
    for m in range(1, n):
        if m + ceil_log(3, 2 * m) + 5 == n:
            return m
    raise DomainError(f"no message length yields codewords of length {n}")


def marker_pair_encode(message):
    """Append a marker pair, the fixed letters 0 2, and the ternary
    syndrome digits of row0+row1.

    The marker letter flips both rows of the last data letter where it can
    (letters 0 and 2); the middle letter 1 keeps a fixed pattern 0 2 behind
    the marker as a fallback frame, since no single letter differs from 1
    in both rows.
    """
    s = _sequence_k2(message)
    if not s:
        raise DomainError("message must be non-empty")
    r0, r1 = decompose_sequence(s, 2)
    _, digits = ternary_redundancy(r0 + r1)
    marker_letter = _PAIR_MARKER[s[-1]]
    return s + (marker_letter, marker_letter, 0, 2) + digits


def marker_pair_decode(rows):
    """Recover the message whichever channel lost a bit.

    The intact row reveals the last data letter (hence the stored ternary
    marker); the short row is framed either by the marker pair or, when the
    marker cannot differ from the data on that row (last letter 1), by the
    fixed 0 2 pattern behind it.
    """
    rows = _check_k2_rows(rows)
    y0, y1 = rows
    if len(y1) == len(y0) + 1:
        short, intact, channel = y0, y1, 0
    elif len(y0) == len(y1) + 1:
        short, intact, channel = y1, y0, 1
    else:
        raise DomainError("exactly one row must be one bit short")
    n = len(intact)
    m = _pair_message_length(n)
    width = ceil_log(3, 2 * m)
    pattern = (intact[m - 1], intact[m])
    if channel == 0:
        last_by_pattern = {(0, 1): 0, (1, 1): 1, (1, 0): 2}
    else:
        last_by_pattern = {(0, 1): 0, (0, 0): 1, (1, 0): 2}
    last_letter = last_by_pattern.get(pattern)
    if last_letter is None:
        raise DecodeFailure(
            f"boundary pattern {pattern} on the intact row is not reachable "
            "by one deletion")
    if last_letter == 1:
        # marker equals the data on this row; frame off the fixed 0 2 pair
        probe = short[m + 2] if channel == 0 else short[m + 1]
        data_intact = probe == (0 if channel == 0 else 1)
    else:
        data_intact = short[m - 1] != short[m]
    if data_intact:
        s0, s1 = (short[:m], intact[:m]) if channel == 0 else (intact[:m], short[:m])
        return _reconstruct_or_fail((s0, s1))
    ternary_marker = (1 if last_letter == 0 else 2)
    digits = _reconstruct_or_fail((y0[-(width + 1):], y1[-(width + 1):]))
    if channel == 0:
        stacked = short[:m - 1] + intact[:m]
    else:
        stacked = intact[:m] + short[:m - 1]
    word = stacked + (ternary_marker, ternary_marker) + digits
    u = ternary_decode(word, 2 * m)
    s0, s1 = u[:m], u[m:]
    check = s1 if channel == 0 else s0
    if check != intact[:m]:
        raise DecodeFailure("syndrome decoding contradicts the intact row")
    return _reconstruct_or_fail((s0, s1))


# ---------------------------------------------------------------------------
# channel-output enumeration for harnesses


def deletion_outputs(codeword, spec_channels):
    """All received row pairs after one deletion.

    spec_channels: (0,) for first-channel-only budgets, (0, 1) when either
    channel may lose a bit.  Yields (channel, position, rows).
    """
    s = _sequence_k2(codeword)
    r0, r1 = decompose_sequence(s, 2)
    for channel in spec_channels:
        row = (r0, r1)[channel]
        for pos in range(len(row)):
            rows = (delete_at(row, pos), r1) if channel == 0 else (r0, delete_at(row, pos))
            yield channel, pos, rows