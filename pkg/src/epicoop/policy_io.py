"""Stable binary format for trained actor parameters.

Layout: magic, one little-endian uint32 header length, a UTF-8 JSON header
(format version, policy kind, feature/node counts, layer sizes, activation,
array manifest), then each array's raw little-endian float64 bytes in manifest
order. Writing the same parameters always produces identical bytes.
"""
from __future__ import annotations

import json
import struct

import numpy as np

from .errors import ContractError
from .nets import DenseNet

MAGIC = b"EPICOOP-POLICY\n"
FORMAT_VERSION = 1


def save_policy(path, actor: DenseNet, kind: str, num_features: int, num_nodes: int) -> None:
    arrays = []
    manifest = []
    for idx, (w, b) in enumerate(zip(actor.weights, actor.biases)):
        for name, arr in ((f"w{idx}", w), (f"b{idx}", b)):
            manifest.append({"name": name, "shape": list(arr.shape)})
            arrays.append(np.ascontiguousarray(arr, dtype="<f8"))
    header = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "num_features": num_features,
        "num_nodes": num_nodes,
        "layer_sizes": list(actor.layer_sizes),
        "output_activation": actor.output_activation,
        "arrays": manifest,
    }
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(struct.pack("<I", len(blob)))
        handle.write(blob)
        for arr in arrays:
            handle.write(arr.tobytes())


def load_policy(path) -> tuple[DenseNet, dict]:
    with open(path, "rb") as handle:
        magic = handle.read(len(MAGIC))
        if magic != MAGIC:
            raise ContractError(f"{path} is not a policy file (bad magic)")
        (header_len,) = struct.unpack("<I", handle.read(4))
        header = json.loads(handle.read(header_len).decode("utf-8"))
        if header.get("format_version") != FORMAT_VERSION:
            raise ContractError(f"unsupported policy format version in {path}")
        actor = DenseNet(header["layer_sizes"], header["output_activation"])
        params = []
        for entry in header["arrays"]:
            shape = tuple(entry["shape"])
            count = int(np.prod(shape)) if shape else 1
            data = handle.read(count * 8)
            if len(data) != count * 8:
                raise ContractError(f"truncated policy file {path}")
            params.append(np.frombuffer(data, dtype="<f8").reshape(shape).copy())
    expected = len(actor.weights) * 2
    if len(params) != expected:
        raise ContractError(f"policy file {path} carries {len(params)} arrays, expected {expected}")
    for idx in range(len(actor.weights)):
        w, b = params[2 * idx], params[2 * idx + 1]
        if w.shape != actor.weights[idx].shape or b.shape != actor.biases[idx].shape:
            raise ContractError(f"policy file {path} has mismatched array shapes")
        actor.weights[idx] = w
        actor.biases[idx] = b
    return actor, header
