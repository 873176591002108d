"""
Translation between canonical counts and backend result formats.

encode() produces what a quirky backend would return; normalize() undoes it.
For every descriptor, normalize(encode(counts)) == counts.
"""

from __future__ import annotations

from collections import Counter
from datetime import datetime
from typing import Optional, Union

from pydantic import ValidationError

from qlbench.backends.base import (
    BackendDescriptor,
    BitOrder,
    NormalizedResult,
    RawResult,
    ResultMetadata,
    ResultStyle,
)
from qlbench.core.errors import NormalizationError
from qlbench.core.models import Counts


def _flip(bits: str, order: BitOrder) -> str:
    return bits[::-1] if order is BitOrder.REVERSED else bits


def encode(
    counts: Counts,
    d: BackendDescriptor,
    metadata: ResultMetadata,
) -> RawResult:
    """
    Render canonical counts in a backend's native format.

    Per-shot payloads list outcomes grouped in ascending canonical order.
    Metadata values are strings under the backend's own key names; fields the
    backend does not report are left out.
    """
    if d.result_style is ResultStyle.AGGREGATED:
        payload: Union[dict[str, int], list[str]] = {
            _flip(bits, d.bit_order): n for bits, n in sorted(counts.histogram.items())
        }
    else:
        payload = [
            _flip(bits, d.bit_order)
            for bits, n in sorted(counts.histogram.items())
            for _ in range(n)
        ]

    values = {
        "backend": metadata.backend,
        "shots": str(metadata.shots),
        "submitted_at": metadata.submitted_at.isoformat() if metadata.submitted_at else None,
        "completed_at": metadata.completed_at.isoformat() if metadata.completed_at else None,
    }
    raw_metadata = {
        raw_key: value
        for key, raw_key in d.metadata_keys.items()
        if raw_key is not None and (value := values[key]) is not None
    }
    return RawResult(
        payload=payload,
        metadata=raw_metadata,
        compiled_stats=metadata.compiled_stats if d.exposes_compiled else None,
    )


def _parse_time(value: Optional[str], field: str) -> Optional[datetime]:
    if value is None:
        return None
    try:
        return datetime.fromisoformat(value)
    except ValueError as e:
        raise NormalizationError(f"metadata field '{field}' is not a timestamp: {value!r}") from e


def normalize(raw: RawResult, d: BackendDescriptor) -> NormalizedResult:
    """
    Convert a raw result into canonical counts and metadata.

    Raises:
        NormalizationError: If the payload does not match the descriptor
    """
    if d.result_style is ResultStyle.AGGREGATED:
        if not isinstance(raw.payload, dict):
            raise NormalizationError(f"backend '{d.name}' should return an aggregated payload")
        histogram: Counter[str] = Counter()
        for bits, n in raw.payload.items():
            histogram[_flip(bits, d.bit_order)] += n
    else:
        if not isinstance(raw.payload, list):
            raise NormalizationError(f"backend '{d.name}' should return a per-shot payload")
        histogram = Counter(_flip(bits, d.bit_order) for bits in raw.payload)

    total = sum(histogram.values())
    keys = d.metadata_keys

    def lookup(key: str) -> Optional[str]:
        raw_key = keys.get(key)
        return raw.metadata.get(raw_key) if raw_key is not None else None

    reported_shots = lookup("shots")
    if reported_shots is not None:
        try:
            shots = int(reported_shots)
        except ValueError as e:
            raise NormalizationError(
                f"shots metadata is not an integer: {reported_shots!r}"
            ) from e
        if shots != total:
            raise NormalizationError(
                f"backend '{d.name}' reports {shots} shots but the payload holds {total}"
            )

    try:
        counts = Counts(shots=total, histogram=dict(histogram))
        metadata = ResultMetadata(
            backend=lookup("backend") or d.name,
            shots=total,
            submitted_at=_parse_time(lookup("submitted_at"), "submitted_at"),
            completed_at=_parse_time(lookup("completed_at"), "completed_at"),
            compiled_stats=raw.compiled_stats,
        )
    except ValidationError as e:
        raise NormalizationError(f"invalid result from backend '{d.name}': {e}") from e

    return NormalizedResult(counts=counts, metadata=metadata)
