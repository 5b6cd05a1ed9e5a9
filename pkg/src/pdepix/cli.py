"""Command-line interface.

Subcommands: denoise | deblur | enhance | inpaint | edges | simulate |
metrics | bench.  Options come from documented defaults, then an optional
flat key=value config file, then CLI flags (dotted flags mirror config
keys, e.g. --pde.kappa 0.1).  Exit codes: 0 success, 2 config error,
3 numerical divergence / CFL violation, 4 I/O error.
"""

import argparse
import os
import sys

import numpy as np

from .bench import run_bench
from .config import (ConfigError, canonical_pde, collect_prefixed, get_bool,
                     get_float, get_int, get_str, parse_config_file,
                     require_str)
from .degrade import block_mask, stroke_mask
from .field import parse_bc
from .imageio import ImageFormatError, read_image, write_image
from .integrate import CflError, DivergenceError
from .metrics import metric_report
from .pipelines import (run_deblur, run_denoise, run_edges, run_enhance,
                        run_inpaint, run_simulate)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4

TASK_DEFAULT_PDE = {
    "denoise": "heat",
    "deblur": "ks",
    "enhance": "ch",
    "inpaint": "mh",
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input image (.pgm or .png)")
    common.add_argument("--output", help="output image path (simulate: directory)")
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--steps", type=int)
    common.add_argument("--dt", type=float)
    common.add_argument("--bc", choices=("neumann", "periodic"))
    common.add_argument("--snapshot-every", type=int, dest="snapshot_every")
    common.add_argument("--pde", help="PDE/method name (heat, laplace, poisson, "
                        "wave, transport, pm, burgers, ch, kdv, ks, liouville, "
                        "mh, tikhonov, tv)")

    parser = argparse.ArgumentParser(
        prog="pdepix", description="PDE-driven image processing toolbox")
    sub = parser.add_subparsers(dest="task", required=True)
    for task in ("denoise", "deblur", "enhance", "inpaint", "edges",
                 "simulate", "metrics", "bench"):
        p = sub.add_parser(task, parents=[common])
        if task == "metrics":
            p.add_argument("--reference", help="clean reference image")
        if task == "inpaint":
            p.add_argument("--mask", help="mask image (nonzero = damaged)")
        if task == "simulate":
            p.add_argument("--spectrum", action="store_true",
                           help="also write magnitude-spectrum snapshots")
        if task == "bench":
            p.add_argument("--corpus", help="image corpus directory")
            p.add_argument("--out-dir", dest="out_dir", default="bench_out")
    return parser


def _parse_extras(extra) -> dict:
    options = {}
    i = 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(extra):
                raise ConfigError(f"flag --{key} needs a value")
            value = extra[i + 1]
            i += 2
        if not key:
            raise ConfigError(f"malformed flag {tok!r}")
        options[key] = value
    return options


def _merged_options(args, extra) -> dict:
    options = {}
    if args.config:
        options.update(parse_config_file(args.config))
    options.update(_parse_extras(extra))
    direct = {"input": args.input, "output": args.output, "seed": args.seed,
              "steps": args.steps, "dt": args.dt, "bc": args.bc,
              "snapshot_every": args.snapshot_every}
    if args.pde is not None:
        direct["pde.kind"] = args.pde
    for attr, key in (("reference", "reference"), ("mask", "mask.path"),
                      ("corpus", "bench.corpus"), ("out_dir", "bench.out")):
        if hasattr(args, attr) and getattr(args, attr) is not None:
            direct[key] = getattr(args, attr)
    if getattr(args, "spectrum", False):
        direct["simulate.spectrum"] = True
    for key, value in direct.items():
        if value is not None:
            options[key] = value
    return options


def _pde_overrides(options) -> tuple:
    overrides = collect_prefixed(options, "pde")
    kind = overrides.pop("kind", None)
    if get_int(options, "steps") is not None:
        overrides["steps"] = get_int(options, "steps")
    if get_float(options, "dt") is not None:
        overrides["dt"] = get_float(options, "dt")
    return kind, overrides


def _load_input(options) -> np.ndarray:
    return read_image(require_str(options, "input"))


def _gray(img) -> np.ndarray:
    return img.mean(axis=2) if img.ndim == 3 else img


def _channelwise(fn, img):
    """Run an image->result function per channel; returns (stacked outputs,
    list of per-channel results)."""
    if img.ndim == 2:
        res = fn(img)
        return res[0], [res]
    outs, results = [], []
    for c in range(img.shape[2]):
        res = fn(img[:, :, c])
        outs.append(res[0])
        results.append(res)
    return np.stack(outs, axis=2), results


def _avg(values) -> float:
    return float(np.mean([float(v) for v in values]))


def _print_report(tag, reports):
    keys = ("mse", "psnr", "ssim", "q")
    merged = {k: _avg([getattr(r, k) for r in reports]) for k in keys}
    print(f"{tag}: " + " ".join(f"{k}={merged[k]!r}" for k in keys))


def _write_output(options, image):
    path = get_str(options, "output")
    if path:
        write_image(image, path)
        print(f"wrote {path}")


def _resolve_mask(options, shape):
    path = get_str(options, "mask.path")
    if path:
        return read_image(path) != 0 if _is_binaryish(path) else _gray(read_image(path)) > 0.5
    strokes = get_int(options, "mask.strokes")
    if strokes:
        return stroke_mask(shape[0], shape[1], strokes=strokes,
                           seed=get_int(options, "seed", 0),
                           thickness=get_int(options, "mask.thickness", 2))
    block = get_str(options, "mask.block")
    if block:
        try:
            top, left, bh, bw = (int(v) for v in block.split(","))
        except ValueError:
            raise ConfigError("mask.block must be top,left,height,width") from None
        return block_mask(shape[0], shape[1], top, left, bh, bw)
    raise ConfigError("inpaint needs mask.path, mask.strokes or mask.block")


def _is_binaryish(path) -> bool:
    return str(path).lower().endswith((".pgm", ".png"))


def _run(argv) -> int:
    parser = _build_parser()
    args, extra = parser.parse_known_args(argv)
    options = _merged_options(args, extra)
    task = args.task
    seed = get_int(options, "seed", 0)
    bc = parse_bc(get_str(options, "bc", "neumann"))
    kind, overrides = _pde_overrides(options)

    if task == "metrics":
        a = _gray(read_image(require_str(options, "reference")))
        b = _gray(_load_input(options))
        _print_report("metrics", [metric_report(a, b)])
        return EXIT_OK

    if task == "bench":
        methods = get_str(options, "bench.methods")
        csv_path, rows = run_bench(
            task=get_str(options, "bench.task", "denoise"),
            corpus_dir=get_str(options, "bench.corpus"),
            methods=[m.strip() for m in methods.split(",") if m.strip()]
            if methods is not None else None,
            out_dir=get_str(options, "bench.out", "bench_out"),
            seed=seed,
            sigmas=[float(s) for s in get_str(options, "bench.sigmas").split(",")]
            if get_str(options, "bench.sigmas") else None,
            size=get_int(options, "bench.size", 64),
            overrides=overrides or None)
        print(f"wrote {csv_path} ({len(rows)} rows)")
        return EXIT_OK

    img = _load_input(options)

    if task == "denoise":
        pde = canonical_pde(kind or TASK_DEFAULT_PDE[task])
        sigma = get_float(options, "noise.sigma", 0.1)
        out, results = _channelwise(
            lambda ch: run_denoise(ch, pde, sigma=sigma, seed=seed, bc=bc,
                                   overrides=overrides), img)
        _print_report("noisy", [r.report_noisy for r in results])
        _print_report("output", [r.report_output for r in results])
        _write_output(options, out)
        return EXIT_OK

    if task == "deblur":
        pde = canonical_pde(kind or TASK_DEFAULT_PDE[task])
        out, results = _channelwise(
            lambda ch: run_deblur(
                ch, pde, noise_sigma=get_float(options, "noise.sigma", 0.05),
                seed=seed, blur_size=get_int(options, "blur.size", 11),
                blur_sigma=get_float(options, "blur.sigma", 3.0),
                pad=get_int(options, "pad", 3), overrides=overrides), img)
        _print_report("degraded", [r.report_degraded for r in results])
        _print_report("output", [r.report_output for r in results])
        _write_output(options, out)
        return EXIT_OK

    if task == "enhance":
        pde = canonical_pde(kind or TASK_DEFAULT_PDE[task])
        out, results = _channelwise(
            lambda ch: run_enhance(ch, pde, bc=bc, overrides=overrides), img)
        psnr = _avg([r.psnr_vs_input for r in results])
        sharp = _avg([r.sharpness_ratio for r in results])
        print(f"enhance: psnr_vs_input={psnr!r} sharpness_ratio={sharp!r} "
              f"mean={float(np.mean(out))!r}")
        _write_output(options, out)
        return EXIT_OK

    if task == "inpaint":
        pde = canonical_pde(kind or TASK_DEFAULT_PDE[task])
        mask = _resolve_mask(options, _gray(img).shape)
        fill = get_float(options, "mask.fill", 0.0)
        out, results = _channelwise(
            lambda ch: run_inpaint(ch, mask, pde, fill=fill, bc=bc,
                                   overrides=overrides), img)
        _print_report("output", [r.report_global for r in results])
        print(f"hole: mse={_avg([r.hole_mse for r in results])!r} "
              f"psnr={_avg([r.hole_psnr for r in results])!r}")
        _write_output(options, out)
        return EXIT_OK

    if task == "edges":
        res = run_edges(
            _gray(img),
            prefilter=get_str(options, "edge.prefilter", "kdv"),
            detector=get_str(options, "edge.detector", "grad"),
            noise_sigma=get_float(options, "noise.sigma", 0.0),
            seed=seed,
            threshold=get_float(options, "edge.threshold"),
            log_sigma=get_float(options, "edge.sigma", 2.0),
            bc=bc, overrides=overrides)
        print(f"edges: pixels={int(np.sum(res.edges))}")
        _write_output(options, res.edges.astype(np.float64))
        return EXIT_OK

    if task == "simulate":
        if kind is None:
            raise ConfigError("simulate requires --pde")
        pde = canonical_pde(kind)
        res = run_simulate(
            _gray(img), pde, bc=bc,
            snapshot_every=get_int(options, "snapshot_every"),
            spectrum=get_bool(options, "simulate.spectrum", False),
            overrides=overrides)
        out_dir = get_str(options, "output")
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            for idx, snap in enumerate(res.snapshots):
                write_image(np.clip(snap, 0.0, 1.0),
                            os.path.join(out_dir, f"snap_{idx:04d}.pgm"))
            for idx, spec in enumerate(res.spectra):
                write_image(spec, os.path.join(out_dir, f"spectrum_{idx:04d}.pgm"))
            print(f"wrote {len(res.snapshots)} snapshots to {out_dir}")
        print(f"simulate: snapshots={len(res.snapshots)}")
        return EXIT_OK

    raise ConfigError(f"unknown task {task!r}")


def main(argv=None) -> int:
    try:
        return _run(argv)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (CflError, DivergenceError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_DIVERGED
    except ImageFormatError as err:
        print(f"image format error: {err}", file=sys.stderr)
        return EXIT_IO
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
