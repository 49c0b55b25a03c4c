"""Codes and bounds for ordered composite DNA sequences.

A k-resolution composite sequence over the binary base alphabet is a word over
Sigma_{k+1} = {0, ..., k}.  Each letter decomposes into a non-decreasing binary
column of height k, giving k ordered binary rows that travel through k
independent channels.  Reconstruction inverts the decomposition columnwise and
emits '?' for columns that are not non-decreasing.

Subpackages cover the channel model (`core`), substitution/deletion error
balls and counting functions (`error_model`), cardinality bounds
(`bounds`), code constructions with decoders (`substitution`, `deletion`),
exhaustive ground-truth search (`oracle`), channel capacity (`capacity`),
and the command-line interface (`cli`).
"""

from composite_codec.core import (
    UNKNOWN,
    CompositeParams,
    CompositeLetter,
    decompose_letter,
    reconstruct_column,
    decompose_sequence,
    reconstruct_rows,
    transform_reverse,
    transform_shift,
    parse_sequence,
    format_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "UNKNOWN",
    "CompositeParams",
    "CompositeLetter",
    "decompose_letter",
    "reconstruct_column",
    "decompose_sequence",
    "reconstruct_rows",
    "transform_reverse",
    "transform_shift",
    "parse_sequence",
    "format_sequence",
    "__version__",
]
