"""Binary framing shared by every serializable structure.

A blob is ``magic (4 bytes) | version (1 byte) | payload``.  Payload fields
are written in order with explicit little-endian widths, so two builds of
the same input produce identical bytes.
"""
from __future__ import annotations

import struct

import numpy as np

VERSION = 1

# dtype code byte -> numpy little-endian dtype
_DTYPES = {1: "<u1", 2: "<u2", 4: "<u4", 8: "<u8", 0x84: "<i4", 0x88: "<i8"}
_CODES = {np.dtype(v).str: k for k, v in _DTYPES.items()}


class FormatError(ValueError):
    """Raised when a blob cannot be decoded."""


class Writer:
    def __init__(self, magic: bytes):
        assert len(magic) == 4
        self._parts = [magic, bytes([VERSION])]

    def u8(self, x: int) -> None:
        self._parts.append(struct.pack("<B", x))

    def u64(self, x: int) -> None:
        self._parts.append(struct.pack("<Q", x))

    def raw(self, b: bytes) -> None:
        self.u64(len(b))
        self._parts.append(bytes(b))

    def array(self, a) -> None:
        """Unsigned arrays are narrowed to the smallest fitting width."""
        a = np.asarray(a)
        if a.dtype.kind in "iu" and (a.size == 0 or a.min() >= 0):
            top = int(a.max()) if a.size else 0
            width = 1 if top < 1 << 8 else 2 if top < 1 << 16 else 4 if top < 1 << 32 else 8
            code = width
        elif a.dtype.kind in "iu":
            code = 0x88
        else:
            raise TypeError(f"cannot frame dtype {a.dtype}")
        data = np.ascontiguousarray(a, dtype=_DTYPES[code]).tobytes()
        self.u8(code)
        self.u64(a.size)
        self._parts.append(data)

    def blob(self, b: bytes) -> None:
        self.raw(b)

    def getvalue(self) -> bytes:
        return b"".join(self._parts)


class Reader:
    def __init__(self, buf: bytes, magic: bytes):
        self._buf = memoryview(bytes(buf))
        if len(self._buf) < 5 or bytes(self._buf[:4]) != magic:
            raise FormatError(f"bad magic, expected {magic!r}")
        if self._buf[4] != VERSION:
            raise FormatError(f"unsupported version {self._buf[4]}")
        self._pos = 5

    def _take(self, k: int) -> memoryview:
        if self._pos + k > len(self._buf):
            raise FormatError("truncated blob")
        out = self._buf[self._pos:self._pos + k]
        self._pos += k
        return out

    def u8(self) -> int:
        return self._take(1)[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self._take(8))[0]

    def raw(self) -> bytes:
        return bytes(self._take(self.u64()))

    def array(self) -> np.ndarray:
        code = self.u8()
        if code not in _DTYPES:
            raise FormatError(f"unknown array code {code}")
        size = self.u64()
        dt = np.dtype(_DTYPES[code])
        data = self._take(size * dt.itemsize)
        return np.frombuffer(data, dtype=dt).astype(np.int64)

    def blob(self) -> bytes:
        return self.raw()

    def done(self) -> None:
        if self._pos != len(self._buf):
            raise FormatError("trailing bytes in blob")


def peek_magic(buf: bytes) -> bytes:
    return bytes(buf[:4])


def width(x: int) -> int:
    """Bits needed for a fixed-width field holding values in [0, x]."""
    return max(1, int(x).bit_length())
