"""
Run manifests: the provenance written next to every command output.
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from constellation_designer.core.models import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def tool_version() -> str:
    from constellation_designer import __version__

    return __version__


def file_digest(path: Union[str, Path]) -> str:
    """sha256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_manifest(
    command: str,
    config: Dict[str, Any],
    seed: Optional[int] = None,
    inputs: Iterable[Union[str, Path]] = (),
    warnings: Optional[List[str]] = None
) -> RunManifest:
    """
    Describe one command execution.

    Args:
        command: Subcommand name
        config: Fully resolved configuration
        seed: Seed used, if any
        inputs: Files the command read (missing files are skipped)
        warnings: Skipped or flagged points

    Returns:
        RunManifest
    """
    digests = {}
    for path in inputs:
        path = Path(path)
        if path.exists():
            digests[str(path)] = file_digest(path)
    return RunManifest(
        command=command,
        config=config,
        seed=seed,
        tool_version=tool_version(),
        input_digests=digests,
        warnings=list(warnings or []),
    )


def manifest_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(output.name + MANIFEST_SUFFIX)


def write_manifest(manifest: RunManifest, output: Union[str, Path]) -> Path:
    """Write the manifest next to `output` as <output>.manifest.json."""
    path = manifest_path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug(f"Wrote manifest {path}")
    return path
