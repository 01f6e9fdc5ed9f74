"""Optional on-disk persistence for recursion memo stores.

Values are stored one JSON object per line, keyed by the canonical key
string.  Writes are idempotent: rewriting a key with the same value is a
no-op, and a debug re-write with a different value raises.
"""

from __future__ import annotations

import json
import os

from .exact import BRat, CJTPoly


def encode_value(value):
    if isinstance(value, CJTPoly):
        return {"kind": "cjt", "terms": value.to_json()}
    if isinstance(value, BRat):
        return {"kind": "brat", **value.to_json()}
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode_value(data):
    if data["kind"] == "cjt":
        return CJTPoly.from_json(data["terms"])
    if data["kind"] == "brat":
        return BRat.from_json(data)
    raise ValueError(f"unknown value kind {data['kind']!r}")


class JsonlStore:
    """A dict-like memo store mirrored to a JSON-lines file."""

    def __init__(self, path: str | None = None):
        self.path = path
        self.mem: dict = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self.mem[rec["key"]] = decode_value(rec["value"])

    def get(self, key):
        return self.mem.get(str(key))

    def __contains__(self, key):
        return str(key) in self.mem

    def __setitem__(self, key, value):
        skey = str(key)
        prev = self.mem.get(skey)
        if prev is not None:
            assert prev == value, f"cache value changed for {skey}"
            return
        self.mem[skey] = value
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps({"key": skey,
                                     "value": encode_value(value)}) + "\n")

    # dict-API shims used by the recursion table
    def __getitem__(self, key):
        return self.mem[str(key)]

    def setdefault(self, key, value):
        if str(key) not in self.mem:
            self[key] = value
        return self.mem[str(key)]
