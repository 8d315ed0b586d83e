import json

import numpy as np
import pytest

from freqgene import write_container


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def vit_fixture(tmp_path):
    """Small transformer-like checkpoint plus its grouping config.

    Three layers with four stacked 2-D groups, one standalone 4-D
    group, and float32 bias tensors left to the passthrough policy.
    """
    gen = np.random.default_rng(7)
    tensors = {}
    for i in range(3):
        tensors[f"blocks.{i}.attn.qkv.weight"] = gen.standard_normal((8, 24))
        tensors[f"blocks.{i}.attn.proj.weight"] = gen.standard_normal((8, 8))
        tensors[f"blocks.{i}.mlp.fc1.weight"] = gen.standard_normal((8, 16))
        tensors[f"blocks.{i}.mlp.fc2.weight"] = gen.standard_normal((16, 8))
        tensors[f"blocks.{i}.attn.qkv.bias"] = gen.standard_normal(24).astype(
            np.float32
        )
    tensors["patch_embed.weight"] = gen.standard_normal((6, 3, 4, 4))
    tensors["cls_token"] = gen.standard_normal((1, 8)).astype(np.float32)

    config = {
        "passthrough_policy": "copy-if-shape-matches",
        "groups": [
            {"name": "qkv", "layer_pattern": "blocks.{L}.attn.qkv.weight",
             "layer_count": 3},
            {"name": "proj", "layer_pattern": "blocks.{L}.attn.proj.weight",
             "layer_count": 3},
            {"name": "fc1", "layer_pattern": "blocks.{L}.mlp.fc1.weight",
             "layer_count": 3},
            {"name": "fc2", "layer_pattern": "blocks.{L}.mlp.fc2.weight",
             "layer_count": 3},
            {"name": "patch", "members": ["patch_embed.weight"]},
        ],
    }

    weights_path = tmp_path / "weights.frnt"
    config_path = tmp_path / "groups.json"
    write_container(weights_path, tensors)
    config_path.write_text(json.dumps(config))
    return weights_path, config_path, tensors
