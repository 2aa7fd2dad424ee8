"""Content-addressed on-disk cache for character tables and L-values.

Keys are ``(kind, modulus, index, point)`` plus the toolkit version; the file
name is the SHA-256 of the canonical key.  Records carry a checksum of their
payload.  Writes go to a temporary file in the same directory followed by
``os.replace``, so a concurrent reader sees either the old or the new complete
record.  Writers serialize on an advisory lock.
"""

from __future__ import annotations

import contextlib
import fcntl
import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from .. import __version__
from ..errors import CacheCorrupt


def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def encode_point(s) -> Any:
    """JSON form of a grid point; complex numbers become [re, im]."""
    if isinstance(s, complex):
        return [s.real, s.imag]
    if isinstance(s, (list, tuple)):
        return [encode_point(v) for v in s]
    return s


class Cache:
    def __init__(self, root: str | os.PathLike, version: str = __version__):
        self.root = Path(root)
        self.version = version

    def key_digest(self, key: tuple) -> str:
        kind, modulus, index, point = key
        canon = _canonical([self.version, kind, modulus, index, encode_point(point)])
        return hashlib.sha256(canon.encode()).hexdigest()

    def path(self, key: tuple) -> Path:
        h = self.key_digest(key)
        return self.root / str(key[0]) / h[:2] / f"{h}.json"

    @contextlib.contextmanager
    def _write_lock(self):
        self.root.mkdir(parents=True, exist_ok=True)
        with open(self.root / ".lock", "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def put(self, key: tuple, payload: Any) -> Path:
        path = self.path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = _canonical(payload)
        record = {"key": [self.version, key[0], key[1], key[2], encode_point(key[3])],
                  "payload": payload, "sha256": hashlib.sha256(body.encode()).hexdigest()}
        with self._write_lock():
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(_canonical(record))
                    fh.flush()
                    os.fsync(fh.fileno())
                os.replace(tmp, path)
            except BaseException:
                with contextlib.suppress(FileNotFoundError):
                    os.unlink(tmp)
                raise
        return path

    def get(self, key: tuple) -> Any:
        """The cached payload, None on a miss; CacheCorrupt on a damaged record."""
        path = self.path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        try:
            record = json.loads(text)
            payload = record["payload"]
            digest = record["sha256"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"unreadable cache record {path}") from exc
        if hashlib.sha256(_canonical(payload).encode()).hexdigest() != digest:
            raise CacheCorrupt(f"checksum mismatch in {path}")
        return payload

    def get_or_compute(self, key: tuple, compute: Callable[[], Any]) -> Any:
        """Cached payload, computing and storing it on a miss; corrupt records are recomputed and overwritten."""
        try:
            hit = self.get(key)
        except CacheCorrupt:
            hit = None
        if hit is not None:
            return hit
        payload = compute()
        self.put(key, payload)
        # read back so hits and misses return identical (JSON round-tripped) values
        return json.loads(_canonical(payload))


def cache_get(cache: Cache, key: tuple) -> Any:
    return cache.get(key)


def cache_put(cache: Cache, key: tuple, payload: Any) -> Path:
    return cache.put(key, payload)
