"""Structure file download with an on-disk cache.

Cache layout is ``cache_dir/<kind>/<id>.pdb``. Files are written to a
temporary name and atomically renamed, so concurrent fetches of the same
id cannot corrupt the cache; cached files are never re-downloaded.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import urllib.error
import urllib.request
from pathlib import Path
from typing import Callable, Mapping, Optional

from ..errors import ChecksumMismatchError, NetworkError, NotFoundError
from .pdb import SourceKind

Transport = Callable[[str], bytes]

DEFAULT_URL_TEMPLATES: Mapping[SourceKind, str] = {
    SourceKind.XRAY: "https://files.rcsb.org/download/{id}.pdb",
    SourceKind.PREDICTED: "https://alphafold.ebi.ac.uk/files/AF-{id}-F1-model_v4.pdb",
}


def urllib_transport(url: str, timeout: float = 30.0) -> bytes:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            return response.read()
    except urllib.error.HTTPError as err:
        if err.code == 404:
            raise NotFoundError(f"{url}: not found (404)") from None
        raise NetworkError(f"{url}: HTTP {err.code}") from None
    except urllib.error.URLError as err:
        raise NetworkError(f"{url}: {err.reason}") from None


def cache_path(structure_id: str, kind: SourceKind, cache_dir: Path) -> Path:
    return Path(cache_dir) / kind.value / f"{structure_id}.pdb"


def fetch_structure(
    structure_id: str,
    kind: SourceKind,
    cache_dir: Path,
    *,
    url_templates: Mapping[SourceKind, str] | None = None,
    transport: Optional[Transport] = None,
    sha256: str | None = None,
) -> Path:
    """Return the local path of a structure file, downloading on cache miss.

    ``transport`` maps a URL to response bytes and exists so tests can stub
    network access; ``sha256`` optionally pins the expected digest.
    """
    path = cache_path(structure_id, kind, cache_dir)
    if path.exists():
        return path

    templates = url_templates or DEFAULT_URL_TEMPLATES
    url = templates[kind].format(id=structure_id)
    data = (transport or urllib_transport)(url)

    if sha256 is not None:
        digest = hashlib.sha256(data).hexdigest()
        if digest != sha256:
            raise ChecksumMismatchError(
                f"{structure_id}: sha256 {digest} != expected {sha256}"
            )

    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{structure_id}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path
