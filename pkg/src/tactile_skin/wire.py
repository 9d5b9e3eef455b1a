"""Bit-exact codec for the device-to-host frame stream.

Frame layout (46 bytes):
  0-1   magic 0xB1 0x05
  2     version 0x01
  3-4   seq, u16 little-endian
  5-8   t_ms, u32 little-endian
  9-26  filtered counts f0..f8, u16 LE each
  27-44 baseline counts b0..b8, u16 LE each
  45    CRC-8 over bytes 2..44 (poly 0x07, init 0x00, MSB-first, no
        reflection, no final XOR)
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .model import COUNT_MAX, SensorFrame

MAGIC = b"\xb1\x05"
VERSION = 0x01
FRAME_LEN = 46

_BODY = struct.Struct("<BHI9H9H")  # version, seq, t_ms, filtered, baseline


def _build_crc_table(poly: int = 0x07) -> tuple[int, ...]:
    table = []
    for byte in range(256):
        crc = byte
        for _ in range(8):
            crc = ((crc << 1) ^ poly) & 0xFF if crc & 0x80 else (crc << 1) & 0xFF
        table.append(crc)
    return tuple(table)


_CRC_TABLE = _build_crc_table()


def crc8(data: bytes) -> int:
    """CRC-8, polynomial 0x07, init 0x00, MSB-first, no reflection or XOR-out."""
    crc = 0x00
    for byte in data:
        crc = _CRC_TABLE[crc ^ byte]
    return crc


def encode_frame(frame: SensorFrame) -> bytes:
    body = _BODY.pack(VERSION, frame.seq, frame.t_ms, *frame.filtered, *frame.baseline)
    return MAGIC + body + bytes([crc8(body)])


@dataclass
class DecodeDiagnostics:
    """Counters for corruption seen on the stream; monotone over a decoder's life."""

    bytes_skipped: int = 0
    crc_failures: int = 0
    range_failures: int = 0

    def copy(self) -> "DecodeDiagnostics":
        return DecodeDiagnostics(self.bytes_skipped, self.crc_failures, self.range_failures)


class FrameDecoder:
    """Incremental decoder; chunks may split frames at arbitrary byte boundaries.

    Single-owner: one decoder per input stream.
    """

    def __init__(self) -> None:
        self._buf = bytearray()
        self.diagnostics = DecodeDiagnostics()

    def feed(self, chunk: bytes) -> list[SensorFrame]:
        """Consume a chunk and return every complete, valid frame it unlocks."""
        self._buf.extend(chunk)
        frames: list[SensorFrame] = []
        buf = self._buf
        diag = self.diagnostics
        while buf:
            if buf[0] != MAGIC[0]:
                del buf[0]
                diag.bytes_skipped += 1
                continue
            if len(buf) < 2:
                break
            if buf[1] != MAGIC[1]:
                del buf[0]
                diag.bytes_skipped += 1
                continue
            if len(buf) < FRAME_LEN:
                break
            body = bytes(buf[2 : FRAME_LEN - 1])
            if crc8(body) != buf[FRAME_LEN - 1]:
                diag.crc_failures += 1
                del buf[0]
                continue
            version, seq, t_ms, *counts = _BODY.unpack(body)
            if version != VERSION or any(c > COUNT_MAX for c in counts):
                diag.range_failures += 1
                del buf[0]
                continue
            frames.append(
                SensorFrame(
                    seq=seq,
                    t_ms=t_ms,
                    filtered=tuple(counts[:9]),
                    baseline=tuple(counts[9:]),
                )
            )
            del buf[:FRAME_LEN]
        return frames

    @property
    def pending_bytes(self) -> int:
        return len(self._buf)


def decode_stream(chunk: bytes, decoder: FrameDecoder | None = None) -> tuple[list[SensorFrame], DecodeDiagnostics, FrameDecoder]:
    """One-shot/incremental convenience wrapper around FrameDecoder."""
    if decoder is None:
        decoder = FrameDecoder()
    frames = decoder.feed(chunk)
    return frames, decoder.diagnostics.copy(), decoder
