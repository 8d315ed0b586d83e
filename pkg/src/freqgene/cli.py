"""Command-line front end.

Subcommands: extract, init, analyze, regloss, roundtrip, refine-demo.
Exit codes are a stable scripting contract: 0 success, 1 computation
error, 2 flag misuse, 3 tolerance breach (roundtrip only).  Numeric
output is printed with full repr precision so runs can be compared as
golden files.  The environment variable FRONT_THREADS (positive
integer, default 1) caps the transform worker count; results are
identical for any setting.
"""

import argparse
import sys

import numpy as np

from . import analysis as _analysis
from . import container as _container
from .dct import dct_nd, idct_nd
from .errors import DuplicateNameError, FreqGeneError, UnresolvedNameError
from .gene import (
    build_mask,
    extract_learngene,
    load_learngene,
    save_learngene,
    stack_group,
)
from .regularizer import (
    DEFAULT_GAMMA,
    DEFAULT_LAMBDA,
    RegConfig,
    refine_demo,
    reg_loss_from_weights,
    total_loss,
)
from .resize import reconstruct


class _UsageError(Exception):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise _UsageError(msg)


def _parse_ratio(raw) -> float:
    ratio = float(raw)
    _require(0.0 < ratio <= 1.0, f"ratio must be in (0, 1], got {ratio}")
    return ratio


def _parse_gammas(raw: str):
    parts = [p for p in str(raw).split(",") if p]
    _require(bool(parts), "empty --gamma value")
    values = tuple(float(p) for p in parts)
    _require(all(g > 0 for g in values), f"--gamma values must be > 0, got {raw}")
    return values[0] if len(values) == 1 else values


def _parse_lambda(raw) -> float:
    lam = float(raw)
    _require(0.0 <= lam <= 1.0, f"--lambda must be in [0, 1], got {lam}")
    return lam


def _parse_assignments(pairs, flag: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        _require(bool(sep) and bool(name), f"{flag} expects NAME=VALUE, got {item!r}")
        out[name] = value
    return out


def _rel_error(got: np.ndarray, ref: np.ndarray) -> float:
    diff = float(np.linalg.norm((got - ref).ravel()))
    denom = float(np.linalg.norm(ref.ravel()))
    return diff if denom == 0.0 else diff / denom


# --- subcommands -------------------------------------------------------------


def _cmd_extract(args) -> int:
    ratio = _parse_ratio(args.ratio)
    overrides = {
        name: _parse_ratio(value)
        for name, value in _parse_assignments(args.ratio_override, "--ratio-override").items()
    }
    box = _container.read_container(args.input)
    cfg = _container.load_grouping_config(args.config)
    known = {rule.name for rule in cfg.groups}
    for name in overrides:
        _require(name in known, f"--ratio-override names unknown group {name!r}")

    resolved = _container.resolve_groups(cfg, box)
    stacked = [(spec, stack_group(spec, tensors)) for spec, tensors in resolved]
    gene = extract_learngene(stacked, ratio, overrides)

    passthrough = {}
    if cfg.passthrough_policy != "omit":
        for name in _container.passthrough_names(cfg, box):
            passthrough[name] = box.tensors[name]
    save_learngene(args.output, gene, passthrough)
    print(f"params={gene.param_count()}")
    return 0


def _target_dims(gene, name: str, depth, dims_by_group) -> tuple[int, ...]:
    src = gene.source_dims[name]
    override = dims_by_group.get(name)
    if override is not None:
        parts = tuple(int(p) for p in override.split("x"))
        _require(all(p >= 1 for p in parts), f"--dims for {name!r} must be >= 1")
    if gene.is_stacked(name):
        layers = depth if depth is not None else src[0]
        rest = parts if override is not None else src[1:]
        _require(
            len(rest) == len(src) - 1,
            f"--dims for stacked group {name!r} needs {len(src) - 1} extents",
        )
        return (layers,) + rest
    if override is not None:
        _require(
            len(parts) == len(src),
            f"--dims for group {name!r} needs {len(src)} extents",
        )
        return parts
    return src


def _cmd_init(args) -> int:
    depth = args.depth
    if depth is not None:
        _require(depth >= 1, f"--depth must be >= 1, got {depth}")
    dims_by_group = _parse_assignments(args.dims, "--dims")

    gene, passthrough = load_learngene(args.gene)
    cfg = _container.load_grouping_config(args.target_config)
    rules = {rule.name: rule for rule in cfg.groups}
    for name in dims_by_group:
        _require(name in gene.blocks, f"--dims names unknown group {name!r}")

    out: dict[str, np.ndarray] = {}

    def put(name: str, value: np.ndarray) -> None:
        if name in out:
            raise DuplicateNameError(f"output tensor {name!r} produced twice")
        out[name] = value

    for name in sorted(gene.blocks):
        rule = rules.get(name)
        if rule is None:
            raise UnresolvedNameError(
                f"target config has no naming rule for group {name!r}"
            )
        target = _target_dims(gene, name, depth, dims_by_group)
        weights = reconstruct(gene.blocks[name], target)
        if gene.is_stacked(name):
            layer_names = rule.expand(layer_count=target[0])
            if len(layer_names) != target[0]:
                raise UnresolvedNameError(
                    f"group {name!r}: rule yields {len(layer_names)} names "
                    f"for {target[0]} layers"
                )
            for i, layer_name in enumerate(layer_names):
                put(layer_name, weights[i])
        else:
            single = rule.expand()
            if len(single) != 1:
                raise UnresolvedNameError(
                    f"group {name!r} is unstacked but rule yields {len(single)} names"
                )
            put(single[0], weights)

    for name in sorted(passthrough):
        if cfg.passthrough_policy == "copy-if-shape-matches":
            put(name, passthrough[name])
        elif cfg.passthrough_policy == "zero-fill":
            put(name, np.zeros_like(passthrough[name]))

    _container.write_container(args.output, out)
    return 0


def _cmd_analyze(args) -> int:
    if args.mode == "energy":
        _require(args.bins >= 1, f"--bins must be >= 1, got {args.bins}")
        box = _container.read_container(args.input)
        tensors = box.as_float64()
        if args.tensor is not None:
            _require_tensor(tensors, args.tensor)
            hist = _analysis.energy_spectrum(tensors[args.tensor], args.bins)
        else:
            total = np.zeros(args.bins)
            energy = 0.0
            for name in sorted(tensors):
                spectrum = dct_nd(tensors[name])
                e = float(np.sum(spectrum * spectrum))
                total += _analysis.energy_spectrum(tensors[name], args.bins) * e
                energy += e
            hist = total / energy if energy else total
        for i, frac in enumerate(hist):
            print(f"{i},{frac!r}")
        return 0

    if args.mode == "compaction":
        ratio = _parse_ratio(args.ratio)
        box = _container.read_container(args.input)
        tensors = box.as_float64()
        if args.tensor is not None:
            _require_tensor(tensors, args.tensor)
            print(repr(_analysis.compaction(tensors[args.tensor], ratio)))
            return 0
        corner_energy = 0.0
        energy = 0.0
        for name in sorted(tensors):
            t = tensors[name]
            e = float(np.sum(dct_nd(t) ** 2))
            print(f"{name},{_analysis.compaction(t, ratio)!r}")
            corner_energy += _analysis.compaction(t, ratio) * e
            energy += e
        aggregate = corner_energy / energy if energy else 1.0
        print(f"aggregate,{aggregate!r}")
        return 0

    # similarity
    ratio = _parse_ratio(args.ratio)
    _require(args.against is not None, "analyze similarity needs --against")
    box_a = _container.read_container(args.input)
    box_b = _container.read_container(args.against)
    a64 = box_a.as_float64()
    b64 = box_b.as_float64()
    common = sorted(set(a64) & set(b64))
    if not common:
        raise FreqGeneError("the two containers share no tensor names")
    corners_a = []
    corners_b = []
    for name in common:
        value = _analysis.lowfreq_similarity(a64[name], b64[name], ratio)
        print(f"{name},{value!r}")
        keep = build_mask(a64[name].shape, ratio)
        sel = tuple(slice(0, k) for k in keep)
        corners_a.append(dct_nd(a64[name])[sel].ravel())
        corners_b.append(dct_nd(b64[name])[sel].ravel())
    flat_a = np.concatenate(corners_a)
    flat_b = np.concatenate(corners_b)
    na, nb = np.linalg.norm(flat_a), np.linalg.norm(flat_b)
    aggregate = 0.0 if na == 0 or nb == 0 else float(np.dot(flat_a, flat_b)) / (na * nb)
    print(f"aggregate,{aggregate!r}")
    return 0


def _require_tensor(tensors, name: str) -> None:
    if name not in tensors:
        raise FreqGeneError(f"tensor {name!r} not in container")


def _cmd_regloss(args) -> int:
    gammas = _parse_gammas(args.gamma)
    lam = _parse_lambda(args.lam)
    box = _container.read_container(args.input)
    cfg = _container.load_grouping_config(args.config)
    resolved = _container.resolve_groups(cfg, box)
    weights = {spec.name: stack_group(spec, tensors) for spec, tensors in resolved}
    reg_cfg = RegConfig(gammas=gammas, lam=lam)
    reg = reg_loss_from_weights(weights, reg_cfg)
    print(f"reg={reg!r}")
    if args.task_loss is not None:
        print(f"total={total_loss(args.task_loss, reg, lam)!r}")
    return 0


def _cmd_roundtrip(args) -> int:
    tol = float(args.tol)
    _require(tol > 0, f"--tol must be > 0, got {tol}")
    box = _container.read_container(args.input)
    tensors = box.as_float64()
    worst = 0.0
    if args.against is not None:
        other = _container.read_container(args.against).as_float64()
        if set(tensors) != set(other):
            raise FreqGeneError(
                "containers hold different tensor sets: "
                f"{sorted(set(tensors) ^ set(other))}"
            )
        for name in sorted(tensors):
            err = _rel_error(tensors[name], other[name])
            print(f"{name},{err!r}")
            worst = max(worst, err)
    else:
        for name in sorted(tensors):
            t = tensors[name]
            err = _rel_error(idct_nd(dct_nd(t)), t)
            print(f"{name},{err!r}")
            worst = max(worst, err)
    print(f"max_error={worst!r}")
    return 0 if worst <= tol else 3


def _cmd_refine_demo(args) -> int:
    gammas = _parse_gammas(args.gamma)
    lam = _parse_lambda(args.lam)
    _require(args.steps >= 1, f"--steps must be >= 1, got {args.steps}")
    _require(args.lr > 0, f"--lr must be > 0, got {args.lr}")
    report = refine_demo(
        seed=args.seed, steps=args.steps,
        cfg=RegConfig(gammas=gammas, lam=lam), lr=args.lr,
    )
    print("step,task_loss,reg_loss,hf_fraction")
    for step, task, reg, hf in report.rows():
        print(f"{step},{task!r},{reg!r},{hf!r}")
    return 0


# --- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqgene",
        description="Frequency-domain weight extraction, resizing, and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract a learngene from a weight container")
    p.add_argument("--input", required=True, help="source weight container")
    p.add_argument("--config", required=True, help="grouping config JSON")
    p.add_argument("--ratio", required=True, help="frequency ratio in (0, 1]")
    p.add_argument("--ratio-override", action="append", metavar="GROUP=R",
                   help="per-group ratio override (repeatable)")
    p.add_argument("--output", required=True, help="learngene container to write")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("init", help="reconstruct target-size weights from a learngene")
    p.add_argument("--gene", required=True, help="learngene container")
    p.add_argument("--target-config", required=True, help="target grouping config JSON")
    p.add_argument("--depth", type=int, default=None,
                   help="target layer count for stacked groups (default: source)")
    p.add_argument("--dims", action="append", metavar="GROUP=AxB",
                   help="target extents per group, x-separated (repeatable)")
    p.add_argument("--output", required=True, help="weight container to write")
    p.set_defaults(func=_cmd_init)

    p = sub.add_parser("analyze", help="spectral diagnostics")
    p.add_argument("mode", choices=("energy", "compaction", "similarity"))
    p.add_argument("--input", required=True)
    p.add_argument("--against", default=None, help="second container (similarity)")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--ratio", default="0.5")
    p.add_argument("--tensor", default=None, help="restrict to one tensor")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("regloss", help="spectral penalty of grouped weights")
    p.add_argument("--input", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--gamma", default=str(DEFAULT_GAMMA),
                   help="decay rate(s), comma-separated for per-axis values")
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--task-loss", type=float, default=None,
                   help="externally computed task loss to combine")
    p.set_defaults(func=_cmd_regloss)

    p = sub.add_parser("roundtrip", help="transform round-trip / container comparison")
    p.add_argument("--input", required=True)
    p.add_argument("--against", default=None,
                   help="compare tensors against this container instead")
    p.add_argument("--tol", default="1e-9", help="relative error tolerance")
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("refine-demo", help="toy regularized-training demonstration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--gamma", default=str(DEFAULT_GAMMA))
    p.add_argument("--lr", type=float, default=0.1)
    p.set_defaults(func=_cmd_refine_demo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code is None else int(exc.code)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (FreqGeneError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
