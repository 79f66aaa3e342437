"""
Database module for the Goldbach sieve toolkit.

This module defines the scan record table and utility functions for persisting
and reading scan results.
"""

import logging
from datetime import datetime
from typing import Iterable, List, Optional

from sqlalchemy import Boolean, Column, DateTime, Integer, String, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from .config import DB_PATH

# Configure logging
logger = logging.getLogger(__name__)

# Create engine and session
engine = create_engine(DB_PATH)
Session = sessionmaker(bind=engine)
Base = declarative_base()


class ScanRecordRow(Base):
    """
    Model for stored scan records.

    Attributes:
        N (int): Primary key, the even number
        complement_size (int): Size of the sieve complement
        cyclotomic (bool): Cyclotomic flag
        mono_orbital (bool): Mono-orbital flag
        qmo (bool): Quasi-mono-orbital flag
        g1_generator (int): Generator of the translation part, 0 when trivial
        h_order (int): Order of the unit part
        group_order (int): Order of G_N
        group_name (str): Isomorphism type of G_N
        regime (str): Structural regime
        strong_conjecture_match (str): "true", "false" or "not-applicable"
        weak_conjecture_holds (bool): Weak conjecture flag
        created_at (datetime): Creation timestamp
        updated_at (datetime): Last update timestamp
    """
    __tablename__ = 'scan_records'

    N = Column(Integer, primary_key=True, autoincrement=False)
    complement_size = Column(Integer, nullable=False)
    cyclotomic = Column(Boolean, nullable=False)
    mono_orbital = Column(Boolean, nullable=False)
    qmo = Column(Boolean, nullable=False)
    g1_generator = Column(Integer, nullable=False)
    h_order = Column(Integer, nullable=False)
    group_order = Column(Integer, nullable=False)
    group_name = Column(String(64), nullable=False)
    regime = Column(String(16), nullable=False)
    strong_conjecture_match = Column(String(16), nullable=False)
    weak_conjecture_holds = Column(Boolean, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow)
    updated_at = Column(DateTime, default=datetime.utcnow, onupdate=datetime.utcnow)

    def __repr__(self):
        return f"<ScanRecordRow(N={self.N}, group_name='{self.group_name}')>"


def _encode_strong(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _decode_strong(value: str):
    return {"true": True, "false": False}.get(value, value)


def _row_to_dict(row: ScanRecordRow) -> dict:
    return {
        'N': row.N,
        'complement_size': row.complement_size,
        'cyclotomic': row.cyclotomic,
        'mono_orbital': row.mono_orbital,
        'qmo': row.qmo,
        'g1_generator': row.g1_generator,
        'h_order': row.h_order,
        'group_order': row.group_order,
        'group_name': row.group_name,
        'regime': row.regime,
        'strong_conjecture_match': _decode_strong(row.strong_conjecture_match),
        'weak_conjecture_holds': row.weak_conjecture_holds,
    }


def configure_database(url: str) -> None:
    """
    Rebind the module engine and session factory to another database URL.

    Args:
        url (str): SQLAlchemy database URL
    """
    global engine
    logger.info(f"Configuring database: {url}")
    engine = create_engine(url)
    Session.configure(bind=engine)


def initialize_database():
    """
    Initialize the database tables.

    Returns:
        bool: True if successful, False otherwise
    """
    logger.info("Initializing database...")
    try:
        Base.metadata.create_all(engine)
        logger.info("Tables created successfully.")
        return True
    except Exception as e:
        logger.error(f"Error initializing database: {e}")
        return False


def store_records(records: Iterable) -> Optional[int]:
    """
    Insert or replace scan records, keyed by N.

    Args:
        records: ScanRecord instances

    Returns:
        int: The number of records stored, or None if an error occurred
    """
    records = list(records)
    logger.info(f"Storing {len(records)} scan records")
    session = Session()
    try:
        for record in records:
            data = record.model_dump()
            data['strong_conjecture_match'] = _encode_strong(data['strong_conjecture_match'])
            session.merge(ScanRecordRow(**data))
        session.commit()
        logger.info(f"Stored {len(records)} scan records")
        return len(records)
    except Exception as e:
        session.rollback()
        logger.error(f"Error storing scan records: {e}")
        return None
    finally:
        session.close()


def get_record(N: int) -> Optional[dict]:
    """
    Get the stored record for one N.

    Args:
        N (int): The even number

    Returns:
        dict: The record fields, or None if absent or an error occurred
    """
    logger.info(f"Getting scan record for N={N}")
    session = Session()
    try:
        row = session.get(ScanRecordRow, N)
        return _row_to_dict(row) if row else None
    except Exception as e:
        session.rollback()
        logger.error(f"Error getting scan record: {e}")
        return None
    finally:
        session.close()


def get_all_records(start: Optional[int] = None, stop: Optional[int] = None) -> List[dict]:
    """
    Get stored records in ascending N, optionally bounded.

    Returns:
        list: Records as dictionaries, empty if an error occurred
    """
    logger.info(f"Getting scan records in [{start}, {stop}]")
    session = Session()
    try:
        query = session.query(ScanRecordRow)
        if start is not None:
            query = query.filter(ScanRecordRow.N >= start)
        if stop is not None:
            query = query.filter(ScanRecordRow.N <= stop)
        return [_row_to_dict(row) for row in query.order_by(ScanRecordRow.N).all()]
    except Exception as e:
        session.rollback()
        logger.error(f"Error getting scan records: {e}")
        return []
    finally:
        session.close()
