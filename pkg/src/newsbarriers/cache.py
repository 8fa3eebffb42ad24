"""On-disk result cache keyed by content hash, with atomic writes and
per-key single-flight so identical concurrent requests compute once."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path
from typing import Callable


def cache_key(snapshot_id: str, normalized_request: dict) -> str:
    payload = json.dumps(
        {"snapshot": snapshot_id, "request": normalized_request},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResultCache:
    def __init__(self, directory: str | Path, max_entries: int = 512):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.max_entries = max_entries
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _key_lock(self, key: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(key, threading.Lock())

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            return None
        os.utime(path)  # refresh LRU recency
        return data

    def get_or_compute(self, key: str, compute: Callable[[], bytes]) -> bytes:
        cached = self.get(key)
        if cached is not None:
            return cached
        with self._key_lock(key):
            cached = self.get(key)
            if cached is not None:
                return cached
            data = compute()
            self._store(key, data)
            return data

    def _store(self, key: str, data: bytes) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, self._path(key))  # atomic write-then-rename
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        self._evict()

    def _evict(self) -> None:
        entries = sorted(
            self.directory.glob("*.json"), key=lambda p: p.stat().st_mtime
        )
        while len(entries) > self.max_entries:
            victim = entries.pop(0)
            try:
                victim.unlink()
            except FileNotFoundError:
                pass
