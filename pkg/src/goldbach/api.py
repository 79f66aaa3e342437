"""
API module for the Goldbach sieve toolkit.

This module defines the API endpoints that expose sieves, symmetry groups,
criteria and stored scan records.
"""

import logging
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel, Field

from .criteria import ExclusionVerdict, exclusion_criterion
from .database import get_all_records, get_record, store_records
from .scanner import ScanRecord, classify
from .sieve import build_sieve
from .symmetry import decompose, symmetry_group_for

# Configure logging
logger = logging.getLogger(__name__)

# Create API router
router = APIRouter()


class SieveResponse(BaseModel):
    """
    Model for a sieve response.

    Attributes:
        N (int): The even number
        complement (list): Sorted complement residues
        p_list (list): 2 and the odd primes dividing N
        q_list (list): The odd primes not dividing N
    """
    N: int
    complement: List[int]
    p_list: List[int]
    q_list: List[int]


class GroupResponse(BaseModel):
    """
    Model for a symmetry group response.

    Attributes:
        N (int): The even number
        order (int): |G_N|
        name (str): Isomorphism type
        g1_generator (int, optional): Generator of the translation part
        unit_part (list): The units v with f_v in G_N
        regime (str): Structural regime
        elements (list): Labels of the elements
    """
    N: int
    order: int
    name: str
    g1_generator: Optional[int] = None
    unit_part: List[int]
    regime: str
    elements: List[str] = Field(default_factory=list)


@router.get("/health", tags=["system"])
async def health():
    """Liveness probe."""
    return {"status": "ok"}


@router.get("/sieve/{n}", response_model=SieveResponse, tags=["sieve"])
async def sieve_endpoint(n: int):
    """
    Build the Goldbach sieve of n.

    Args:
        n (int): An even number >= 2

    Returns:
        SieveResponse: The complement and prime split
    """
    logger.info(f"Building sieve for N={n}")
    sieve = build_sieve(n)
    return SieveResponse(
        N=n,
        complement=list(sieve.complement),
        p_list=list(sieve.split.p_list),
        q_list=list(sieve.split.q_list),
    )


@router.get("/group/{n}", response_model=GroupResponse, tags=["symmetry"])
async def group_endpoint(n: int):
    """
    Compute G_n and its structural regime.

    Args:
        n (int): An even number within the symmetry capacity

    Returns:
        GroupResponse: The group summary
    """
    logger.info(f"Computing symmetry group for N={n}")
    group = symmetry_group_for(n)
    regime = decompose(group).regime
    return GroupResponse(
        N=n,
        order=group.order,
        name=group.descriptor.name,
        g1_generator=group.g1_generator,
        unit_part=list(group.unit_part),
        regime=regime,
        elements=[f.label for f in group.elements],
    )


@router.get("/classify/{n}", response_model=ScanRecord, tags=["scanner"])
async def classify_endpoint(n: int, store: bool = Query(False, description="Persist the record")):
    """
    Classify n and optionally store the record.

    Args:
        n (int): An even number
        store (bool): Whether to persist the record

    Returns:
        ScanRecord: The record
    """
    logger.info(f"Classifying N={n} (store={store})")
    record = classify(n)
    if store and store_records([record]) is None:
        raise HTTPException(status_code=500, detail="Failed to store record")
    return record


@router.get("/criteria/{n}/exclusion", response_model=ExclusionVerdict, tags=["criteria"])
async def exclusion_endpoint(
    n: int,
    d: int = Query(..., description="Half the divisor 2d of n"),
    alpha: int = Query(..., description="Unit multiplier"),
):
    """
    Run the translation exclusion criterion for T_(2 d alpha).

    Returns:
        ExclusionVerdict: The verdict with its intermediate sets
    """
    logger.info(f"Exclusion criterion for N={n}, d={d}, alpha={alpha}")
    return exclusion_criterion(n, d, alpha)


@router.get("/records", response_model=List[ScanRecord], tags=["records"])
async def records_endpoint(
    start: Optional[int] = Query(None, description="Lowest N"),
    stop: Optional[int] = Query(None, description="Highest N"),
):
    """
    Get stored scan records in ascending N.

    Returns:
        list: The stored records
    """
    logger.info(f"Getting stored records in [{start}, {stop}]")
    return get_all_records(start, stop)


@router.get("/records/{n}", response_model=ScanRecord, tags=["records"])
async def record_endpoint(n: int):
    """
    Get the stored record for n.

    Raises:
        HTTPException: 404 if no record is stored
    """
    logger.info(f"Getting stored record for N={n}")
    record = get_record(n)
    if record is None:
        raise HTTPException(status_code=404, detail=f"No record stored for N={n}")
    return record
