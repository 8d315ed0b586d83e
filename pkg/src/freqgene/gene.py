"""Learngene extraction: stack weight groups, transform, keep the
low-frequency corner.

A learngene is the dense corner block of each group's DCT spectrum.
The kept extent along an axis of length ``dim`` is

    keep = min(floor(ratio * dim) + 1, dim)

i.e. coefficient indices 0..floor(ratio*dim) inclusive, clamped to the
axis.  ``ratio = 1`` keeps the whole spectrum.  Zeros outside the
corner are implied, never stored.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .dct import dct_nd
from .errors import (
    DuplicateNameError,
    InvalidShapeError,
    MissingTensorError,
    ShapeMismatchError,
)

FORMAT_VERSION = 1

_GROUP_RANKS = (2, 3, 4)


@dataclass(frozen=True)
class WeightGroupSpec:
    """Named, ordered collection of checkpoint tensors forming one group.

    Multi-member groups are stacked along a new leading layer axis
    (member order = layer order).  Single-member groups pass through
    unchanged, which covers standalone 2-D and 4-D weights.
    """

    name: str
    member_names: tuple[str, ...]

    def __post_init__(self):
        if not self.member_names:
            raise InvalidShapeError(f"group {self.name!r} has no members")
        object.__setattr__(self, "member_names", tuple(self.member_names))


def check_ratio(ratio: float) -> float:
    ratio = float(ratio)
    if not 0.0 < ratio <= 1.0:
        raise ValueError(f"frequency ratio must be in (0, 1], got {ratio}")
    return ratio


def build_mask(shape, ratio) -> tuple[int, ...]:
    """Per-axis kept-coefficient counts for the given frequency ratio."""
    ratio = check_ratio(ratio)
    return tuple(min(math.floor(ratio * d) + 1, d) for d in shape)


def stack_group(spec: WeightGroupSpec, tensors) -> np.ndarray:
    """Stack a group's members along a new leading layer axis.

    Single-member groups return their tensor unchanged (as float64).
    All members must share one shape; the stacked rank must be 2..4.
    """
    members = []
    for name in spec.member_names:
        if name not in tensors:
            raise MissingTensorError(f"group {spec.name!r}: tensor {name!r} not found")
        members.append(np.asarray(tensors[name], dtype=np.float64))
    first = members[0].shape
    for name, m in zip(spec.member_names, members):
        if m.shape != first:
            raise ShapeMismatchError(
                f"group {spec.name!r}: {name!r} has shape {m.shape}, expected {first}"
            )
    stacked = members[0] if len(members) == 1 else np.stack(members, axis=0)
    if stacked.ndim not in _GROUP_RANKS:
        raise InvalidShapeError(
            f"group {spec.name!r}: stacked rank {stacked.ndim} not in {_GROUP_RANKS}"
        )
    return stacked


@dataclass
class Learngene:
    """Low-frequency spectrum blocks plus the metadata to re-expand them."""

    blocks: dict[str, np.ndarray]
    source_dims: dict[str, tuple[int, ...]]
    ratios: dict[str, float]
    members: dict[str, tuple[str, ...]] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def param_count(self) -> int:
        """Number of stored coefficients (the transferred-parameter metric)."""
        return sum(int(b.size) for b in self.blocks.values())

    def keep_counts(self, name: str) -> tuple[int, ...]:
        return self.blocks[name].shape

    def rank_of(self, name: str) -> int:
        return len(self.source_dims[name])

    def is_stacked(self, name: str) -> bool:
        return len(self.members.get(name, ("",))) > 1


def extract_learngene(groups, ratio, overrides=None) -> Learngene:
    """Transform each stacked group and keep its low-frequency corner.

    ``groups`` is an iterable of (WeightGroupSpec, stacked tensor).
    ``overrides`` maps group names to per-group ratios.  Output is
    ordered by group name; identical inputs give bit-identical blocks.
    """
    ratio = check_ratio(ratio)
    overrides = dict(overrides or {})
    blocks: dict[str, np.ndarray] = {}
    dims: dict[str, tuple[int, ...]] = {}
    ratios: dict[str, float] = {}
    members: dict[str, tuple[str, ...]] = {}
    for spec, stacked in sorted(groups, key=lambda pair: pair[0].name):
        if spec.name in blocks:
            raise DuplicateNameError(f"group {spec.name!r} appears twice")
        stacked = np.asarray(stacked, dtype=np.float64)
        if stacked.ndim not in _GROUP_RANKS:
            raise InvalidShapeError(
                f"group {spec.name!r}: rank {stacked.ndim} not in {_GROUP_RANKS}"
            )
        r = check_ratio(overrides.get(spec.name, ratio))
        keep = build_mask(stacked.shape, r)
        spectrum = dct_nd(stacked)
        corner = tuple(slice(0, k) for k in keep)
        blocks[spec.name] = np.ascontiguousarray(spectrum[corner])
        dims[spec.name] = tuple(stacked.shape)
        ratios[spec.name] = r
        members[spec.name] = spec.member_names
    return Learngene(blocks=blocks, source_dims=dims, ratios=ratios, members=members)


def save_learngene(path, gene: Learngene, passthrough=None) -> None:
    """Persist a learngene (plus optional passthrough tensors) to a container.

    Blocks are stored under their group names; passthrough tensors keep
    their checkpoint names and must not collide with group names.
    """
    from . import container as _container

    passthrough = dict(passthrough or {})
    tensors: dict[str, np.ndarray] = {}
    for name, block in gene.blocks.items():
        tensors[name] = block
    for name, t in passthrough.items():
        if name in tensors:
            raise DuplicateNameError(
                f"passthrough tensor {name!r} collides with a group name"
            )
        tensors[name] = np.asarray(t)
    meta = {
        "kind": "learngene",
        "format_version": gene.format_version,
        "groups": {
            name: {
                "source_dims": list(gene.source_dims[name]),
                "ratio": gene.ratios[name],
                "keep": list(gene.blocks[name].shape),
                "members": list(gene.members.get(name, ())),
            }
            for name in sorted(gene.blocks)
        },
        "passthrough": sorted(passthrough),
    }
    _container.write_container(path, tensors, meta=meta)


def load_learngene(path):
    """Read a learngene container; returns (Learngene, passthrough dict)."""
    from . import container as _container

    box = _container.read_container(path)
    meta = box.meta or {}
    if meta.get("kind") != "learngene":
        raise _container.manifest_error(f"{path}: container is not a learngene")
    groups = meta.get("groups", {})
    blocks: dict[str, np.ndarray] = {}
    dims: dict[str, tuple[int, ...]] = {}
    ratios: dict[str, float] = {}
    members: dict[str, tuple[str, ...]] = {}
    for name in sorted(groups):
        info = groups[name]
        if name not in box.tensors:
            raise _container.manifest_error(f"{path}: missing block for group {name!r}")
        block = np.asarray(box.tensors[name], dtype=np.float64)
        keep = tuple(int(k) for k in info["keep"])
        if block.shape != keep:
            raise _container.manifest_error(
                f"{path}: block {name!r} has shape {block.shape}, manifest says {keep}"
            )
        blocks[name] = block
        dims[name] = tuple(int(d) for d in info["source_dims"])
        ratios[name] = float(info["ratio"])
        members[name] = tuple(info.get("members", ()))
    passthrough = {
        name: box.tensors[name] for name in meta.get("passthrough", ())
    }
    gene = Learngene(
        blocks=blocks,
        source_dims=dims,
        ratios=ratios,
        members=members,
        format_version=int(meta.get("format_version", FORMAT_VERSION)),
    )
    return gene, passthrough
