"""Exact counting of distinct serializations.

A spec with n distinct note elements, od distinct octave-durations and i
distinct instruments supports w = n*od*i distinct words; a stream of ms
words has w**ms serializations and k streams w**(ms*k). All arithmetic
uses Python's arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .spec_model import CompositionSpec, distinct_counts


@dataclass(frozen=True)
class MultiplicityReport:
    n: int
    od: int
    i: int
    w: int
    ms: int
    k: int
    per_stream: int
    total: int

    @property
    def per_stream_digits(self):
        return len(str(self.per_stream))

    @property
    def decimal_digits_total(self):
        return len(str(self.total))


def word_count(spec: CompositionSpec) -> int:
    n, od, i = distinct_counts(spec)
    return n * od * i


def serialization_count(w: int, ms: int) -> int:
    """Distinct ordered word sequences of length ms over w words."""
    if w < 1 or ms < 0:
        raise ValueError("need w >= 1 and ms >= 0")
    return w**ms


def total_count(w: int, ms: int, k: int) -> int:
    """Distinct ordered k-tuples of length-ms word sequences."""
    if k < 1:
        raise ValueError("need k >= 1")
    return serialization_count(w, ms * k)


def multiplicity_report(spec: CompositionSpec, ms: int, k: int) -> MultiplicityReport:
    n, od, i = distinct_counts(spec)
    w = n * od * i
    return MultiplicityReport(
        n=n,
        od=od,
        i=i,
        w=w,
        ms=ms,
        k=k,
        per_stream=serialization_count(w, ms),
        total=total_count(w, ms, k),
    )


def abbreviate(value: int, max_digits: int = 30) -> str:
    """Decimal string, or '~10^D' once the exact digits stop being useful."""
    text = str(value)
    if len(text) <= max_digits:
        return text
    return f"~10^{len(text) - 1} ({len(text)} digits)"
