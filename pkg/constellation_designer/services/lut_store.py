"""
Constellation look-up-table store interface and JSON implementation.

A store is one versioned JSON document:

    {
      "format": "constellation-lut",
      "version": 1,
      "chernoff_distance_divisor": 4.0,
      "records": [{"m": 2, "snr_db": 12.0, "mcs": 1, "points": [[re, im], ...], ...}],
      "references": [{"name": "conventional-16qam", "mcs": [1, 2], ...}]
    }

Floats are written with Python's shortest round-trip repr, so load(store(x))
returns exactly x. Records are unique by (m, snr_db, mcs); storing an existing
key overwrites it. The optional "chernoff_distance_divisor" names the
Chernoff distance scaling every design in the document was optimized under; a
store never mixes two scalings.

Example:
    >>> store = get_lut_store("lut.json")
    >>> store.store(record)
    >>> store.load((2, 12.0, 1)).points[0]
    (0.1358, 0.6934)
"""

import json
import logging
import os
import tempfile
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from constellation_designer.config import settings
from constellation_designer.core.errors import ConfigurationError, LutFormatError, LutKeyError
from constellation_designer.core.models import AWGN, LutRecord, ReferenceConstellation, is_awgn

logger = logging.getLogger(__name__)

STORE_FORMAT = "constellation-lut"
STORE_VERSION = 1
DIVISOR_KEY = "chernoff_distance_divisor"

LutKey = Tuple[Any, float, int]


def normalize_key(key: LutKey) -> Tuple[str, float, int]:
    """Comparable form of (m, snr_db, mcs); SNR labels are compared to 1e-9 dB."""
    m, snr_db, mcs = key
    m_label = AWGN if is_awgn(m) else str(int(m))
    return (m_label, round(float(snr_db), 9), int(mcs))


class LutStoreInterface(ABC):
    """
    Abstract interface for constellation look-up tables.

    All store implementations must implement these methods.
    """

    @abstractmethod
    def store(self, record: LutRecord) -> None:
        """
        Insert a record, replacing any record with the same key.

        Raises:
            ConfigurationError: If the store is read-only
        """
        pass

    @abstractmethod
    def load(self, key: LutKey) -> LutRecord:
        """
        Fetch the record stored under (m, snr_db, mcs).

        Raises:
            LutKeyError: If no record has this key
            LutFormatError: If the backing document is malformed
        """
        pass

    @abstractmethod
    def records(self, m: Optional[Any] = None, mcs: Optional[int] = None) -> List[LutRecord]:
        """All records, optionally filtered by fading parameter and scheme."""
        pass

    @abstractmethod
    def references(self) -> List[ReferenceConstellation]:
        """Named constellations that are not indexed by (m, SNR)."""
        pass

    @abstractmethod
    def distance_divisor(self) -> Optional[float]:
        """
        Chernoff distance divisor the stored designs were made under.

        Returns:
            The declared divisor, or None for a store that has not declared one
        """
        pass


class JsonLutStore(LutStoreInterface):
    """
    Look-up table persisted as a single JSON document.

    The file is re-read on every call and rewritten atomically on every
    store, so one writer and any number of readers can share it.

    Args:
        path: Document location (created on first store)
        read_only: Reject writes, used for bundled fixtures
    """

    def __init__(self, path: Union[str, Path], read_only: bool = False):
        self.path = Path(path)
        self.read_only = read_only

    def _read_document(self) -> Dict[str, Any]:
        if not self.path.exists():
            return {"format": STORE_FORMAT, "version": STORE_VERSION, "records": [], "references": []}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except json.JSONDecodeError as e:
            raise LutFormatError(f"{self.path} is not valid JSON: {e}") from e

        if not isinstance(document, dict) or document.get("format") != STORE_FORMAT:
            raise LutFormatError(f"{self.path} is not a {STORE_FORMAT} document")
        if document.get("version") != STORE_VERSION:
            raise LutFormatError(
                f"{self.path} has version {document.get('version')!r}, expected {STORE_VERSION}"
            )
        if not isinstance(document.get("records", []), list):
            raise LutFormatError(f"{self.path}: 'records' must be a list")
        divisor = document.get(DIVISOR_KEY)
        if divisor is not None and (
            isinstance(divisor, bool) or not isinstance(divisor, (int, float)) or divisor <= 0
        ):
            raise LutFormatError(f"{self.path}: {DIVISOR_KEY} must be a positive number, got {divisor!r}")
        document.setdefault("records", [])
        document.setdefault("references", [])
        return document

    def _parse(self, model, raw: Any, position: int):
        try:
            return model.model_validate(raw)
        except ValidationError as e:
            raise LutFormatError(f"{self.path}: entry {position} is invalid: {e}") from e

    def _write_document(self, document: Dict[str, Any]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(document, f, indent=2)
                f.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def store(self, record: LutRecord) -> None:
        if self.read_only:
            raise ConfigurationError(f"{self.path} is a read-only store")
        document = self._read_document()
        current = settings.CHERNOFF_DISTANCE_DIVISOR
        declared = document.get(DIVISOR_KEY)
        if declared is None:
            document[DIVISOR_KEY] = current
        elif float(declared) != float(current):
            raise ConfigurationError(
                f"{self.path} holds designs made with Chernoff distance divisor {declared}, "
                f"refusing to add one made with {current}"
            )
        key = normalize_key(record.key)
        kept = [
            raw for i, raw in enumerate(document["records"])
            if normalize_key(self._parse(LutRecord, raw, i).key) != key
        ]
        kept.append(record.model_dump(mode="json"))
        kept.sort(key=lambda raw: normalize_key((raw["m"], raw["snr_db"], raw["mcs"])))
        document["records"] = kept
        self._write_document(document)
        logger.debug(f"Stored LUT record {key} in {self.path}")

    def load(self, key: LutKey) -> LutRecord:
        wanted = normalize_key(key)
        for record in self.records():
            if normalize_key(record.key) == wanted:
                return record
        raise LutKeyError(f"no LUT record for (m, snr_db, mcs) = {key} in {self.path}")

    def records(self, m: Optional[Any] = None, mcs: Optional[int] = None) -> List[LutRecord]:
        document = self._read_document()
        parsed = [self._parse(LutRecord, raw, i) for i, raw in enumerate(document["records"])]
        if m is not None:
            m_label = normalize_key((m, 0.0, 0))[0]
            parsed = [r for r in parsed if normalize_key(r.key)[0] == m_label]
        if mcs is not None:
            parsed = [r for r in parsed if r.mcs == mcs]
        return parsed

    def references(self) -> List[ReferenceConstellation]:
        document = self._read_document()
        return [
            self._parse(ReferenceConstellation, raw, i)
            for i, raw in enumerate(document["references"])
        ]

    def distance_divisor(self) -> Optional[float]:
        divisor = self._read_document().get(DIVISOR_KEY)
        return None if divisor is None else float(divisor)


def get_lut_store(path: Optional[Union[str, Path]] = None) -> LutStoreInterface:
    """
    Factory function for the writable look-up table.

    Args:
        path: Store location (defaults to settings.LUT_STORE_PATH)

    Returns:
        LUT store instance
    """
    return JsonLutStore(settings.LUT_STORE_PATH if path is None else path)


def get_fixture_store() -> LutStoreInterface:
    """Read-only store of the bundled published constellations."""
    return JsonLutStore(settings.fixture_store_path, read_only=True)
