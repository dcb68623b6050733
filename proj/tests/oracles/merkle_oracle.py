#!/usr/bin/env python3
"""Reference Merkle root computation via hashlib, for pinning golden values.

Tree rule: leaf = SHA256(0x00 || data), node = SHA256(0x01 || left || right),
odd node at any layer is paired with a copy of itself.
"""

import hashlib


def leaf(data: bytes) -> bytes:
    return hashlib.sha256(b"\x00" + data).digest()


def node(left: bytes, right: bytes) -> bytes:
    return hashlib.sha256(b"\x01" + left + right).digest()


def root(leaves):
    layer = [leaf(d) for d in leaves]
    while len(layer) > 1:
        if len(layer) % 2:
            layer.append(layer[-1])
        layer = [node(layer[i], layer[i + 1]) for i in range(0, len(layer), 2)]
    return layer[0]


if __name__ == "__main__":
    for case in ([b"a"], [b"a", b"b"], [b"a", b"b", b"c"], [b"a", b"b", b"c", b"d"]):
        names = ",".join(d.decode() for d in case)
        print(f"root({names}) = {root(case).hex()}")
