"""Decode a corrupted byte stream from the device.

The device emits fixed 46-byte frames (magic + version + seq + t_ms +
9 filtered + 9 baseline counts + CRC-8). The decoder resynchronizes after
garbage and rejects corrupt frames, reporting everything via diagnostics.
"""

from tactile_skin import FrameDecoder, SensorFrame, encode_frame

frames = [
    SensorFrame(seq=k, t_ms=k * 110, filtered=(512 - 5 * k,) + (512,) * 8, baseline=(512,) * 9)
    for k in range(4)
]

stream = bytearray()
stream += b"\x00\xfe\x42"            # line noise before the first frame
stream += encode_frame(frames[0])
corrupt = bytearray(encode_frame(frames[1]))
corrupt[20] ^= 0x01                   # single bit flip: frame must be dropped
stream += corrupt
stream += encode_frame(frames[2])
stream += encode_frame(frames[3])

decoder = FrameDecoder()
decoded = []
for i in range(0, len(stream), 7):    # feed in awkward 7-byte chunks
    decoded.extend(decoder.feed(bytes(stream[i : i + 7])))

print(f"decoded {len(decoded)} of {len(frames)} frames")
for f in decoded:
    print(f"  seq={f.seq} t={f.t_ms}ms f0={f.filtered[0]}")
d = decoder.diagnostics
print(f"diagnostics: skipped={d.bytes_skipped}B crc_failures={d.crc_failures} range_failures={d.range_failures}")
