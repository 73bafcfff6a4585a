"""
Catalog of the modulation and coding schemes.

All three schemes use the 4-state [5, 7]_8 mother code. MCS-2 punctures it
to rate 3/4; MCS-3 keeps 6 of every 8 coded bits, which is rate 2/3 although
the scheme is published as 3/4 (the label is kept in `table_rate`, the rate
is always derived from the mask).
"""

from typing import Dict, Iterable, List

from constellation_designer.core.constellation import Constellation, qam_constellation
from constellation_designer.core.errors import ConfigurationError
from constellation_designer.core.models import McsEntry, PuncturePattern

MOTHER_CODE = (5, 7)

MCS_CATALOG: Dict[int, McsEntry] = {
    entry.id: entry
    for entry in (
        McsEntry(id=1, table_rate="1/2", modulation_order=16, generators=MOTHER_CODE),
        McsEntry(
            id=2,
            table_rate="3/4",
            modulation_order=16,
            generators=MOTHER_CODE,
            puncture=PuncturePattern(mask=((1, 1, 0), (0, 1, 1))),
        ),
        McsEntry(
            id=3,
            table_rate="3/4",
            modulation_order=64,
            generators=MOTHER_CODE,
            puncture=PuncturePattern(mask=((1, 1, 0, 1), (0, 1, 1, 1))),
        ),
    )
}


def get_mcs(mcs_id: int) -> McsEntry:
    """
    Look up a scheme by id.

    Raises:
        ConfigurationError: For an unknown id
    """
    try:
        return MCS_CATALOG[int(mcs_id)]
    except (KeyError, ValueError):
        raise ConfigurationError(
            f"unknown MCS {mcs_id!r}; available: {sorted(MCS_CATALOG)}"
        ) from None


def get_mcs_list(mcs_ids: Iterable[int]) -> List[McsEntry]:
    return [get_mcs(i) for i in mcs_ids]


def conventional_constellation(mcs: McsEntry) -> Constellation:
    """Gray QAM shared by every scheme of the same modulation order."""
    return qam_constellation(mcs.modulation_order)


def rate_discrepancies() -> List[str]:
    """Notes for schemes whose published rate differs from their mask."""
    return [note for note in (m.rate_discrepancy for m in MCS_CATALOG.values()) if note]
