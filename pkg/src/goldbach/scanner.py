"""
Scanner module for the Goldbach sieve toolkit.

This module classifies even numbers, sweeps ranges of them (optionally across
worker processes) and writes the resulting records as JSONL or CSV reports.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from .config import DEFAULT_JOBS
from .criteria import orbit_classification
from .errors import CapacityError, ReportError
from .modarith import euler_phi
from .sieve import build_sieve
from .symmetry import decompose, symmetry_group_for

# Configure logging
logger = logging.getLogger(__name__)

REPORT_FORMATS = ("jsonl", "csv")


class ScanRecord(BaseModel):
    """
    Classification of one even N and the conjectures evaluated on G_N.

    Attributes:
        N (int): The even number
        complement_size (int): Size of the sieve complement
        cyclotomic (bool): Every odd prime <= sqrt(N) divides N
        mono_orbital (bool): Exactly one orbit Q_k
        qmo (bool): At most one orbit Q_k
        g1_generator (int): Generator of G_N^(1), 0 when trivial
        h_order (int): |H|
        group_order (int): |G_N|
        group_name (str): Isomorphism type of G_N
        regime (str): Structural regime of G_N
        strong_conjecture_match: Whether G_N is V (4 | N) or Z2, or "not-applicable"
        weak_conjecture_holds (bool): G_N is a proper subgroup of Aff(Z_N)
    """
    N: int = Field(..., description="The even number")
    complement_size: int = Field(..., description="Size of the sieve complement")
    cyclotomic: bool = Field(..., description="Every odd prime <= sqrt(N) divides N")
    mono_orbital: bool = Field(..., description="Exactly one orbit Q_k")
    qmo: bool = Field(..., description="At most one orbit Q_k")
    g1_generator: int = Field(..., description="Generator of the translation part, 0 when trivial")
    h_order: int = Field(..., description="Order of the unit part")
    group_order: int = Field(..., description="Order of G_N")
    group_name: str = Field(..., description="Isomorphism type of G_N")
    regime: str = Field(..., description="Structural regime of G_N")
    strong_conjecture_match: Union[bool, str] = Field(..., description="V or Z2 match, or not-applicable")
    weak_conjecture_holds: bool = Field(..., description="G_N is a proper subgroup of Aff(Z_N)")


class ClassMatch(BaseModel):
    checked: int = Field(0, description="Records evaluated")
    matched: int = Field(0, description="Records matching the conjecture")

    @property
    def rate(self) -> float:
        return self.matched / self.checked if self.checked else 0.0


class ScanSummary(BaseModel):
    """Aggregate counts over a scan."""
    total: int = Field(..., description="Records scanned")
    weak_holds: int = Field(..., description="Records with a proper symmetry group")
    cyclotomic: int = Field(..., description="Cyclotomic records")
    divisible_by_four: ClassMatch = Field(..., description="Strong conjecture over 4 | N")
    twice_odd: ClassMatch = Field(..., description="Strong conjecture over N = 2 * odd")

    def render(self) -> str:
        return (
            f"scanned={self.total} weak_holds={self.weak_holds} cyclotomic={self.cyclotomic} "
            f"strong_4|N={self.divisible_by_four.matched}/{self.divisible_by_four.checked} "
            f"strong_2||N={self.twice_odd.matched}/{self.twice_odd.checked}"
        )


def classify(N: int) -> ScanRecord:
    """
    Build the full record for one even N.

    Args:
        N (int): An even number within the symmetry capacity

    Returns:
        ScanRecord: The record

    Example:
        >>> classify(90).group_name
        'Z2'
    """
    sieve = build_sieve(N)
    group = symmetry_group_for(N)
    classification = orbit_classification(N)
    name = group.descriptor.name
    if classification.cyclotomic:
        strong: Union[bool, str] = "not-applicable"
    else:
        strong = name == ("V" if N % 4 == 0 else "Z2")
    return ScanRecord(
        N=N,
        complement_size=len(sieve.complement),
        cyclotomic=classification.cyclotomic,
        mono_orbital=classification.mono_orbital,
        qmo=classification.qmo,
        g1_generator=group.g1_generator or 0,
        h_order=len(group.unit_part),
        group_order=group.order,
        group_name=name,
        regime=decompose(group).regime,
        strong_conjecture_match=strong,
        weak_conjecture_holds=group.order < N * euler_phi(N),
    )


def _classify_guarded(N: int) -> Tuple[int, Optional[ScanRecord], Optional[str]]:
    try:
        return N, classify(N), None
    except CapacityError as e:
        return N, None, str(e)


def scan_range(start: int, stop: int, jobs: Optional[int] = None, abort: bool = False) -> List[ScanRecord]:
    """
    Classify every even N in [start, stop], ascending.

    Odd bounds are rounded inward to the nearest even number. Work is split by N
    across worker processes when jobs > 1; the result order never depends on it.

    Args:
        start (int): Lower bound
        stop (int): Upper bound
        jobs (int, optional): Worker processes, defaults to the available CPUs
        abort (bool): Raise on the first capacity error instead of skipping

    Returns:
        List[ScanRecord]: One record per N that fit the capacity limits
    """
    if start > stop:
        raise ValueError(f"empty range: {start} > {stop}")
    first = max(start + start % 2, 2)
    numbers = list(range(first, stop - stop % 2 + 1, 2))
    jobs = jobs or DEFAULT_JOBS
    logger.info(f"Scanning {len(numbers)} even numbers in [{start}, {stop}] with {jobs} jobs")

    if jobs == 1 or len(numbers) < 2:
        outcomes = [_classify_guarded(N) for N in numbers]
    else:
        chunksize = max(1, len(numbers) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_classify_guarded, numbers, chunksize=chunksize))

    records = []
    for N, record, error in outcomes:
        if record is not None:
            records.append(record)
            continue
        if abort:
            raise CapacityError(f"N={N}: {error}")
        logger.warning(f"Skipping N={N}: {error}")
    return records


def _csv_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit_report(records: Iterable[ScanRecord], fmt: str, path) -> Path:
    """
    Write records as JSONL (one object per line) or CSV (header plus rows).

    Raises:
        ValueError: On an unknown format
        ReportError: If the file cannot be written
    """
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")
    path = Path(path)
    records = list(records)
    try:
        with path.open("w", encoding="utf-8", newline="") as handle:
            if fmt == "jsonl":
                for record in records:
                    handle.write(record.model_dump_json() + "\n")
            else:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(list(ScanRecord.model_fields))
                for record in records:
                    writer.writerow([_csv_value(v) for v in record.model_dump().values()])
    except OSError as e:
        logger.error(f"Error writing report to {path}: {e}")
        raise ReportError(f"cannot write report to {path}: {e}") from e
    logger.info(f"Wrote {len(records)} records to {path} as {fmt}")
    return path


def summarize(records: Iterable[ScanRecord]) -> ScanSummary:
    """Count weak-conjecture successes and strong-conjecture matches per class."""
    records = list(records)
    four, odd = ClassMatch(), ClassMatch()
    for record in records:
        if record.strong_conjecture_match == "not-applicable":
            continue
        bucket = four if record.N % 4 == 0 else odd
        bucket.checked += 1
        bucket.matched += record.strong_conjecture_match is True
    return ScanSummary(
        total=len(records),
        weak_holds=sum(r.weak_conjecture_holds for r in records),
        cyclotomic=sum(r.cyclotomic for r in records),
        divisible_by_four=four,
        twice_odd=odd,
    )
