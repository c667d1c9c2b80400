"""Content-addressed on-disk store for per-complex results."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .complexes import SimplicialComplex, members


def complex_key(K: SimplicialComplex) -> dict:
    """Labelled face data; isomorphic complexes with different labels get different keys."""
    return {"vertices": list(K.vertices), "facets": sorted(list(members(f)) for f in K.facets_masks)}


class ResultCache:
    """JSON blobs under ``root/ab/<sha256>.json``.

    Writes go to a temporary file and are renamed into place, so concurrent
    workers can insert the same key without tearing a file.
    """

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    def key(self, K: SimplicialComplex, check: str, field: str, version: str, extra=None) -> str:
        blob = json.dumps({"complex": complex_key(K), "check": check, "field": field,
                           "version": version, "extra": extra}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str):
        if self.root is None:
            return None
        p = self._path(key)
        try:
            return json.loads(p.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None

    def put(self, key: str, value) -> None:
        if self.root is None:
            return
        p = self._path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(value, fh, sort_keys=True)
        os.replace(tmp, p)

    def get_or_compute(self, key: str, compute):
        hit = self.get(key)
        if hit is not None:
            return hit
        value = compute()
        self.put(key, value)
        return value
