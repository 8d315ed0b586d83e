"""Bit-exact binary tensor container and the JSON grouping config.

File layout (all integers little-endian):

    bytes 0..3    magic ``FRNT``
    bytes 4..7    u32 version (currently 1)
    bytes 8..15   u64 manifest length in bytes
    manifest      UTF-8 JSON object:
                    {"tensors": [{"name", "dtype", "shape",
                                  "offset", "nbytes"}, ...],
                     "meta": {...}}        # "meta" optional
                  entries sorted by name; "offset" counts from the
                  start of the payload region
    payload       little-endian IEEE-754 values, row-major, tensors
                  concatenated in manifest order

The manifest is serialized canonically (sorted keys, no whitespace), so
write -> read -> write reproduces a file byte for byte.  Supported
dtypes are ``f32`` and ``f64``; values are stored exactly as given
(float32 arrays are written as f32, everything else as f64).
"""

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadMagicError,
    CorruptManifestError,
    DuplicateNameError,
    NonFiniteError,
    OverlapError,
    TruncatedPayloadError,
    UnresolvedNameError,
    UnsupportedVersionError,
)
from .gene import WeightGroupSpec

MAGIC = b"FRNT"
VERSION = 1

_DTYPES = {"f32": np.dtype("<f4"), "f64": np.dtype("<f8")}
_HEADER = struct.Struct("<4sIQ")


def manifest_error(msg: str) -> CorruptManifestError:
    return CorruptManifestError(msg)


def _dtype_tag(a: np.ndarray) -> str:
    return "f32" if a.dtype == np.float32 else "f64"


def _encode_manifest(entries, meta) -> bytes:
    doc = {"tensors": entries}
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def write_container(path, tensors, meta=None) -> None:
    """Write a name -> array mapping (float32 or float64) plus optional meta."""
    items = []
    seen = set()
    for name in sorted(tensors):
        if name in seen:
            raise DuplicateNameError(f"duplicate tensor name {name!r}")
        seen.add(name)
        a = np.asarray(tensors[name])
        if a.dtype != np.float32:
            a = np.asarray(a, dtype=np.float64)
        if not np.all(np.isfinite(a)):
            raise NonFiniteError(f"tensor {name!r} contains NaN or Inf")
        items.append((name, np.ascontiguousarray(a)))

    entries = []
    offset = 0
    for name, a in items:
        tag = _dtype_tag(a)
        nbytes = a.size * _DTYPES[tag].itemsize
        entries.append(
            {
                "name": name,
                "dtype": tag,
                "shape": list(a.shape),
                "offset": offset,
                "nbytes": nbytes,
            }
        )
        offset += nbytes

    manifest = _encode_manifest(entries, meta)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, len(manifest)))
        fh.write(manifest)
        for _, a in items:
            fh.write(a.astype(_DTYPES[_dtype_tag(a)], copy=False).tobytes(order="C"))


@dataclass
class Container:
    """In-memory view of a container file (arrays keep their stored dtype)."""

    version: int
    tensors: dict[str, np.ndarray]
    meta: dict | None = None

    def as_float64(self) -> dict[str, np.ndarray]:
        return {k: np.asarray(v, dtype=np.float64) for k, v in self.tensors.items()}


def read_container(path) -> Container:
    """Exact inverse of write_container."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 4 or blob[:4] != MAGIC:
        raise BadMagicError(f"{path}: not a container file (bad magic)")
    if len(blob) < _HEADER.size:
        raise CorruptManifestError(f"{path}: truncated header")
    _, version, manifest_len = _HEADER.unpack_from(blob)
    if version != VERSION:
        raise UnsupportedVersionError(f"{path}: unsupported version {version}")
    body = blob[_HEADER.size:]
    if manifest_len > len(body):
        raise CorruptManifestError(
            f"{path}: manifest length {manifest_len} exceeds file size"
        )
    try:
        doc = json.loads(body[:manifest_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptManifestError(f"{path}: unreadable manifest: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("tensors"), list):
        raise CorruptManifestError(f"{path}: manifest missing tensor list")

    payload = body[manifest_len:]
    tensors: dict[str, np.ndarray] = {}
    for entry in doc["tensors"]:
        try:
            name = entry["name"]
            tag = entry["dtype"]
            shape = tuple(int(d) for d in entry["shape"])
            offset = int(entry["offset"])
            nbytes = int(entry["nbytes"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptManifestError(f"{path}: malformed tensor entry: {exc}") from exc
        if tag not in _DTYPES:
            raise CorruptManifestError(f"{path}: unknown dtype {tag!r}")
        dtype = _DTYPES[tag]
        count = int(np.prod(shape)) if shape else 1
        if nbytes != count * dtype.itemsize:
            raise CorruptManifestError(
                f"{path}: tensor {name!r} claims {nbytes} bytes for shape {shape}"
            )
        if offset < 0 or offset + nbytes > len(payload):
            raise TruncatedPayloadError(
                f"{path}: tensor {name!r} payload extends past end of file"
            )
        if name in tensors:
            raise DuplicateNameError(f"{path}: duplicate tensor name {name!r}")
        a = np.frombuffer(payload, dtype=dtype, count=count, offset=offset)
        tensors[name] = a.reshape(shape).copy()

    meta = doc.get("meta")
    return Container(version=version, tensors=tensors, meta=meta)


# --- grouping configuration --------------------------------------------------


@dataclass(frozen=True)
class GroupRule:
    """One group: either a ``{L}`` layer pattern or an explicit member list."""

    name: str
    layer_pattern: str | None = None
    layer_count: int | None = None
    members: tuple[str, ...] | None = None

    def expand(self, layer_count: int | None = None) -> tuple[str, ...]:
        if self.members is not None:
            return self.members
        count = self.layer_count if layer_count is None else layer_count
        return tuple(
            self.layer_pattern.replace("{L}", str(i)) for i in range(count)
        )


PASSTHROUGH_POLICIES = ("omit", "copy-if-shape-matches", "zero-fill")


@dataclass
class GroupingConfig:
    groups: list[GroupRule] = field(default_factory=list)
    passthrough_policy: str = "omit"


def load_grouping_config(path) -> GroupingConfig:
    """Parse and validate a grouping-config JSON document."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or not isinstance(doc.get("groups"), list):
        raise ValueError(f"{path}: config must contain a 'groups' list")
    policy = doc.get("passthrough_policy", "omit")
    if policy not in PASSTHROUGH_POLICIES:
        raise ValueError(
            f"{path}: passthrough_policy must be one of {PASSTHROUGH_POLICIES}"
        )
    rules = []
    names = set()
    for raw in doc["groups"]:
        name = raw.get("name")
        if not name or name in names:
            raise ValueError(f"{path}: every group needs a unique name")
        names.add(name)
        pattern = raw.get("layer_pattern")
        members = raw.get("members")
        if (pattern is None) == (members is None):
            raise ValueError(
                f"{path}: group {name!r} needs exactly one of layer_pattern/members"
            )
        if pattern is not None:
            count = raw.get("layer_count")
            if "{L}" not in pattern:
                raise ValueError(f"{path}: group {name!r} pattern lacks '{{L}}'")
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"{path}: group {name!r} needs layer_count >= 1")
            rules.append(GroupRule(name=name, layer_pattern=pattern, layer_count=count))
        else:
            if not members:
                raise ValueError(f"{path}: group {name!r} has an empty member list")
            rules.append(GroupRule(name=name, members=tuple(members)))
    return GroupingConfig(groups=rules, passthrough_policy=policy)


def resolve_groups(cfg: GroupingConfig, box: Container):
    """Expand grouping rules against a container.

    Returns a list of (WeightGroupSpec, member-name -> float64 tensor) in
    declaration order, members in layer order.  f32 payloads are upcast.
    """
    claimed: dict[str, str] = {}
    out = []
    for rule in cfg.groups:
        names = rule.expand()
        tensors = {}
        for n in names:
            if n not in box.tensors:
                raise UnresolvedNameError(
                    f"group {rule.name!r}: tensor {n!r} not in container"
                )
            if n in claimed:
                raise OverlapError(
                    f"tensor {n!r} claimed by both {claimed[n]!r} and {rule.name!r}"
                )
            claimed[n] = rule.name
            tensors[n] = np.asarray(box.tensors[n], dtype=np.float64)
        out.append((WeightGroupSpec(name=rule.name, member_names=names), tensors))
    return out


def passthrough_names(cfg: GroupingConfig, box: Container) -> list[str]:
    """Container tensors not claimed by any group, sorted by name."""
    claimed = set()
    for rule in cfg.groups:
        claimed.update(rule.expand())
    return sorted(n for n in box.tensors if n not in claimed)
