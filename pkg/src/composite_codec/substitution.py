"""Substitution-correcting codes for composite sequences.

Three families:

* per-channel products: each binary row is drawn from its own binary block
  code, and rows are decoded independently;
* the fiber construction: only the letters k-1 and k are error-prone under
  a single first-channel error, so a binary inner code protects exactly the
  subsequence of those letters;
* checksum codes: a weighted position checksum modulo 2n+1 locates a single
  level shift, much like single-deletion checksums do.

All three are membership-defined; decoders consume raw row tuples as they
come off the channels, including column-inconsistent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from composite_codec.core import (
    UNKNOWN,
    DomainError,
    all_sequences,
    decompose_sequence,
    reconstruct_rows,
)
from composite_codec.bounds import ceil_log


class DecodeFailure(DomainError):
    """The received word is not decodable within the promised error budget."""


# ---------------------------------------------------------------------------
# binary block codes used per row / as inner codes


class BinaryCode:
    """Interface: length, corrects, size, member(x), decode(y), codewords()."""

    length: int
    corrects: int

    def member(self, word) -> bool:
        raise NotImplementedError

    def decode(self, word):
        raise NotImplementedError

    def codewords(self):
        raise NotImplementedError

    @property
    def size(self) -> int:
        raise NotImplementedError

    def _check_length(self, word):
        if len(word) != self.length:
            raise DomainError(
                f"word length {len(word)} != code length {self.length}")


class TrivialCode(BinaryCode):
    """The full binary space; corrects nothing, accepts everything."""

    corrects = 0

    def __init__(self, length: int):
        if length < 0:
            raise DomainError("length must be >= 0")
        self.length = length

    def member(self, word) -> bool:
        self._check_length(word)
        return True

    def decode(self, word):
        self._check_length(word)
        return tuple(word)

    def codewords(self):
        return all_sequences(self.length, 1)

    @property
    def size(self) -> int:
        return 2 ** self.length


class HammingCosetCode(BinaryCode):
    """A coset of the (possibly shortened) Hamming code.

    Parity checks are the binary expansions of the positions 1..length, so
    the syndrome of a single error is the flipped position itself.  Every
    coset has exactly 2^(length - ceil(log2(length+1))) words and corrects
    one substitution.
    """

    corrects = 1

    def __init__(self, length: int, coset: int = 0):
        if length < 0:
            raise DomainError("length must be >= 0")
        self.length = length
        self.bits = ceil_log(2, length + 1)
        if not 0 <= coset < 2 ** self.bits:
            raise DomainError(f"coset label {coset} out of range")
        self.coset = coset

    def _syndrome(self, word) -> int:
        s = 0
        for i, bit in enumerate(word, start=1):
            if bit:
                s ^= i
        return s

    def member(self, word) -> bool:
        self._check_length(word)
        return self._syndrome(word) == self.coset

    def decode(self, word):
        self._check_length(word)
        err = self._syndrome(word) ^ self.coset
        if err == 0:
            return tuple(word)
        if err > self.length:
            raise DecodeFailure(
                f"syndrome {err} points outside the word; more than one error")
        fixed = list(word)
        fixed[err - 1] ^= 1
        return tuple(fixed)

    def codewords(self):
        return (w for w in all_sequences(self.length, 1) if self.member(w))

    @property
    def size(self) -> int:
        return 2 ** (self.length - self.bits)


class ExplicitCode(BinaryCode):
    """An arbitrary codebook with nearest-codeword decoding.

    Ties go to the lexicographically smallest nearest codeword, so decoding
    is deterministic; corrects floor((d_min - 1) / 2) errors.
    """

    MAX_LENGTH = 12

    def __init__(self, length: int, codewords):
        if not 0 <= length <= self.MAX_LENGTH:
            raise DomainError(
                f"explicit codebooks support length <= {self.MAX_LENGTH}")
        self.length = length
        words = sorted({tuple(w) for w in codewords})
        for w in words:
            if len(w) != length or any(b not in (0, 1) for b in w):
                raise DomainError(f"not a binary word of length {length}: {w!r}")
        if not words:
            raise DomainError("a codebook needs at least one codeword")
        self._words = tuple(words)
        self._members = frozenset(words)
        dmin = length + 1
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                dmin = min(dmin, sum(a != b for a, b in zip(words[i], words[j])))
        self.corrects = (dmin - 1) // 2 if len(words) > 1 else length

    def member(self, word) -> bool:
        self._check_length(word)
        return tuple(word) in self._members

    def decode(self, word):
        self._check_length(word)
        word = tuple(word)
        best, best_dist = None, None
        for c in self._words:
            d = sum(a != b for a, b in zip(c, word))
            if best_dist is None or d < best_dist:
                best, best_dist = c, d
        return best

    def codewords(self):
        return iter(self._words)

    @property
    def size(self) -> int:
        return len(self._words)


# ---------------------------------------------------------------------------
# per-channel products


def _check_row_codes(k: int, row_codes, n: int):
    if len(row_codes) != k:
        raise DomainError(f"need one binary code per channel, got {len(row_codes)}")
    for j, code in enumerate(row_codes):
        if code.length != n:
            raise DomainError(
                f"channel {j} code has length {code.length}, expected {n}")


def product_membership(s, k: int, row_codes) -> bool:
    """Does every row of s belong to its channel's binary code?"""
    _check_row_codes(k, row_codes, len(s))
    rows = decompose_sequence(s, k)
    return all(code.member(row) for code, row in zip(row_codes, rows))


def product_enumerate(n: int, k: int, row_codes):
    """All codewords, by filtering the composite space."""
    _check_row_codes(k, row_codes, n)
    for s in all_sequences(n, k):
        rows = decompose_sequence(s, k)
        if all(code.member(row) for code, row in zip(row_codes, rows)):
            yield s


def product_decode(rows, k: int, row_codes):
    """Decode each row in its own code, then read the sequence back.

    Raises DecodeFailure naming the channel whose row could not be decoded,
    or reporting an inconsistent column if row decoding does not yield a
    composite sequence.
    """
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != k:
        raise DomainError(f"expected {k} rows, got {len(rows)}")
    _check_row_codes(k, row_codes, len(rows[0]) if rows else 0)
    fixed = []
    for j, (code, row) in enumerate(zip(row_codes, rows)):
        try:
            fixed.append(code.decode(row))
        except DecodeFailure as exc:
            raise DecodeFailure(f"channel {j}: {exc}") from exc
    s = reconstruct_rows(fixed)
    if UNKNOWN in s:
        raise DecodeFailure(
            f"corrected rows disagree at column {s.index(UNKNOWN)}")
    return s


# ---------------------------------------------------------------------------
# the fiber construction


def fiber_value(s, k: int) -> int:
    """How many letters of s are k-1 or k (the letters a first-channel
    error can silently toggle)."""
    return sum(1 for sigma in s if sigma >= k - 1)


def fiber_map(s, k: int):
    """The binary fingerprint of the error-prone letters: k-1 -> 0, k -> 1,
    all other letters dropped."""
    return tuple(1 if sigma == k else 0 for sigma in s if sigma >= k - 1)


def hamming_fiber_inners(n: int, coset: int = 0) -> dict:
    """Hamming-coset inner codes for every possible fiber length."""
    return {ell: HammingCosetCode(ell, coset if coset < 2 ** ceil_log(2, ell + 1) else 0)
            for ell in range(n + 1)}


def optimal_fiber_inners(n: int) -> dict:
    """Largest single-error inner codes, from exhaustive search (n <= 8)."""
    from composite_codec.oracle import optimal_binary_single_error

    return {ell: ExplicitCode(ell, optimal_binary_single_error(ell).witness)
            for ell in range(n + 1)}


def _check_inners(inners, n: int):
    for ell in range(n + 1):
        code = inners.get(ell)
        if code is None:
            raise DomainError(f"no inner code for fiber length {ell}")
        if code.length != ell:
            raise DomainError(
                f"inner code for length {ell} has length {code.length}")
        if ell >= 1 and code.corrects < 1:
            raise DomainError(
                f"inner code for length {ell} does not correct one error")


def fiber_membership(s, k: int, inners) -> bool:
    """s belongs to the fiber code iff its fingerprint is an inner codeword."""
    if k < 2:
        raise DomainError("the fiber construction needs k >= 2")
    _check_inners(inners, len(s))
    return inners[fiber_value(s, k)].member(fiber_map(s, k))


def fiber_enumerate(n: int, k: int, inners):
    if k < 2:
        raise DomainError("the fiber construction needs k >= 2")
    _check_inners(inners, n)
    for s in all_sequences(n, k):
        if inners[fiber_value(s, k)].member(fiber_map(s, k)):
            yield s


def fiber_code_size(n: int, k: int, inner_sizes) -> int:
    """Codeword count: choose the fiber positions, fill the rest with the
    k-1 letters that are never affected, and count inner codewords."""
    if k < 2:
        raise DomainError("the fiber construction needs k >= 2")
    return sum(comb(n, ell) * (k - 1) ** (n - ell) * inner_sizes[ell]
               for ell in range(n + 1))


def fiber_decode(rows, k: int, inners):
    """Correct one substitution error on the first channel.

    A first-channel error either breaks one column (visible, fixed by
    flipping the bit back) or silently toggles k-1 <-> k (invisible in the
    rows, corrected by the inner code on the fingerprint).
    """
    if k < 2:
        raise DomainError("the fiber construction needs k >= 2")
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != k:
        raise DomainError(f"expected {k} rows, got {len(rows)}")
    _check_inners(inners, len(rows[0]) if rows else 0)
    y = reconstruct_rows(rows)
    unknown = [i for i, v in enumerate(y) if v == UNKNOWN]
    if len(unknown) > 1:
        raise DecodeFailure(
            f"{len(unknown)} inconsistent columns; budget is one error")
    if unknown:
        j = unknown[0]
        top = list(rows[0])
        top[j] ^= 1
        s = reconstruct_rows([tuple(top)] + list(rows[1:]))
        if UNKNOWN in s:
            raise DecodeFailure(
                f"column {j} not explainable by one first-channel error")
        if not inners[fiber_value(s, k)].member(fiber_map(s, k)):
            raise DecodeFailure("repaired word is not a codeword")
        return s
    ell = fiber_value(y, k)
    fingerprint = fiber_map(y, k)
    decoded = inners[ell].decode(fingerprint)
    diff = [r for r, (a, b) in enumerate(zip(decoded, fingerprint)) if a != b]
    if not diff:
        return y
    if len(diff) > 1:
        raise DecodeFailure("fingerprint is not within one error of a codeword")
    marked = [i for i, sigma in enumerate(y) if sigma >= k - 1]
    s = list(y)
    s[marked[diff[0]]] = k if decoded[diff[0]] else k - 1
    return tuple(s)


# ---------------------------------------------------------------------------
# checksum codes: one arbitrary substitution anywhere


def checksum(s, n: int) -> int:
    """Position-weighted letter sum modulo 2n+1 (positions 1-based)."""
    return sum(i * sigma for i, sigma in enumerate(s, start=1)) % (2 * n + 1)


def checksum_membership(s, k: int, label: int = 0) -> bool:
    n = len(s)
    if not 0 <= label < 2 * n + 1:
        raise DomainError(f"label {label} out of range for n={n}")
    return checksum(s, n) == label


def checksum_enumerate(n: int, k: int, label: int = 0):
    for s in all_sequences(n, k):
        if checksum(s, n) == label:
            yield s


def _repair_column(column):
    """Valid columns a single bit error away from the received one.

    Returns (exact, levels): exact repairs give one level, the ambiguous
    lone-bit pattern gives the two levels around the midpoint.
    """
    k = len(column)
    v = list(column)
    t = next(i for i in range(k - 1) if v[i] == 1 and v[i + 1] == 0)
    if t > 0 and v[t - 1] == 1:
        # a zero hole below a run of ones: only filling it is consistent
        return True, (sum(v) + 1,)
    if t < k - 2 and v[t + 2] == 0:
        # a lone one with zeros on both sides: only clearing it is consistent
        return True, (sum(v) - 1,)
    # lone one directly above the bottom run: both repairs are valid columns
    mid = k - t - 1
    return False, (mid - 1, mid + 1)


def checksum_decode(rows, k: int, label: int = 0):
    """Correct one bit error across all rows via the checksum.

    A broken column narrows the error to one position (sometimes two
    candidate levels); a silent error shifts one level by +-1 and the
    checksum residue reveals position and direction.
    """
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != k:
        raise DomainError(f"expected {k} rows, got {len(rows)}")
    n = len(rows[0]) if rows else 0
    mod = 2 * n + 1
    if not 0 <= label < mod:
        raise DomainError(f"label {label} out of range for n={n}")
    y = reconstruct_rows(rows)
    unknown = [i for i, v in enumerate(y) if v == UNKNOWN]
    if len(unknown) > 1:
        raise DecodeFailure(
            f"{len(unknown)} inconsistent columns; budget is one error")
    if unknown:
        j = unknown[0]
        column = tuple(rows[r][j] for r in range(k))
        exact, levels = _repair_column(column)
        matches = []
        for level in levels:
            if not 0 <= level <= k:
                continue
            s = list(y)
            s[j] = level
            if checksum(s, n) == label:
                matches.append(tuple(s))
        if len(matches) != 1:
            raise DecodeFailure(f"column {j} repair does not match the checksum")
        return matches[0]
    d = (checksum(y, n) - label) % mod
    if d == 0:
        return y
    s = list(y)
    if 1 <= d <= n:
        pos, delta = d - 1, -1
    else:
        pos, delta = (mod - d) - 1, 1
    s[pos] += delta
    if not 0 <= s[pos] <= k:
        raise DecodeFailure(
            f"checksum residue {d} needs an out-of-range level at column {pos}")
    return tuple(s)