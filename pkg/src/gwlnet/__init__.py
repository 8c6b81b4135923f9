"""Smoothed convolutional classifier for anticyclonic circulation patterns.

A small, pure-numpy stack: domain types and text formats (:mod:`.datamodel`),
a synthetic data generator (:mod:`.synth`), the convolutional network with
manual backpropagation (:mod:`.net`), label- and transition-smoothing
(:mod:`.smoothing`), year-grouped nested cross-validation with metrics
(:mod:`.evalcv`), and a command-line front end (:mod:`.cli`).
"""

from .datamodel import (
    ClassId,
    Dataset,
    GridField,
    LabelSeries,
    ParseError,
    Run,
    boundary_mask,
    class_frequencies,
    parse_fields,
    parse_labels,
    runs,
    write_fields,
    write_labels,
)

__version__ = "0.1.0"

__all__ = [
    "ClassId",
    "Dataset",
    "GridField",
    "LabelSeries",
    "ParseError",
    "Run",
    "boundary_mask",
    "class_frequencies",
    "parse_fields",
    "parse_labels",
    "runs",
    "write_fields",
    "write_labels",
    "__version__",
]
