"""
Shared fixtures: catalog schemes, their supertrellises and small stores.
"""

import json

import pytest

from constellation_designer.adapt.mcs import get_mcs
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.core.constellation import qam_constellation
from constellation_designer.core.models import LutRecord
from constellation_designer.services.lut_store import JsonLutStore


@pytest.fixture
def mcs1():
    return get_mcs(1)


@pytest.fixture
def mcs2():
    return get_mcs(2)


@pytest.fixture
def trellis1(mcs1):
    return trellis_for_mcs(mcs1)


@pytest.fixture
def trellis2(mcs2):
    return trellis_for_mcs(mcs2)


@pytest.fixture
def qam16():
    return qam_constellation(16)


@pytest.fixture
def make_record(qam16):
    """Build a LUT record around 16-QAM with the given key."""

    def _make(m=2, snr_db=12.0, mcs=1, points=None, bound=None, provenance="test"):
        return LutRecord(
            m=m,
            snr_db=snr_db,
            mcs=mcs,
            generators=[5, 7],
            puncture=None if mcs == 1 else [[1, 1, 0], [0, 1, 1]],
            points=points if points is not None else qam16.to_pairs(),
            bound=bound,
            provenance=provenance,
        )

    return _make


@pytest.fixture
def lut_store(tmp_path):
    """Empty writable store in a temporary directory."""
    return JsonLutStore(tmp_path / "lut.json")


@pytest.fixture
def write_document(tmp_path):
    """Write a raw store document and return its path."""

    def _write(document, name="raw.json"):
        path = tmp_path / name
        if isinstance(document, str):
            path.write_text(document, encoding="utf-8")
        else:
            path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write
