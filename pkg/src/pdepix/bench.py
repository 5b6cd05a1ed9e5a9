"""Benchmark harness: task x method x parameter matrix over an image
corpus, emitting a CSV of metrics and labeled side-by-side image grids.

All cells are deterministic given the seed; the wall_ms column is the only
part of the CSV that varies between runs.
"""

import csv
import os
import time

import numpy as np

from . import synth
from .config import ConfigError, canonical_pde
from .degrade import stroke_mask
from .gridviz import make_grid
from .imageio import read_image, write_pgm
from .pipelines import run_deblur, run_denoise, run_inpaint

CSV_COLUMNS = ("image", "method", "params", "mse", "psnr", "ssim", "q", "wall_ms")

DENOISE_METHODS = ("heat", "laplace", "pm", "mh")
DEBLUR_METHODS = ("tikhonov", "tv", "ks")
INPAINT_METHODS = ("burgers", "ch", "mh")


def load_corpus(path=None, size: int = 64) -> dict:
    """Grayscale corpus from a directory of .pgm/.png files, or the
    synthetic stand-ins; RGB inputs are averaged to one channel."""
    if path is None:
        return synth.default_corpus(size)
    names = sorted(f for f in os.listdir(path)
                   if f.lower().endswith((".pgm", ".png")))
    if not names:
        raise ConfigError(f"no .pgm/.png images found in {path!r}")
    corpus = {}
    for name in names:
        img = read_image(os.path.join(path, name))
        if img.ndim == 3:
            img = img.mean(axis=2)
        corpus[os.path.splitext(name)[0]] = img
    return corpus


def _fmt(x) -> str:
    return repr(float(x))


def _params_string(d: dict) -> str:
    return ";".join(f"{k}={d[k]}" for k in sorted(d))


def _safe(text) -> str:
    return str(text).replace(".", "p").replace("/", "_")


def run_bench(task: str = "denoise", corpus_dir=None, methods=None,
              out_dir: str = ".", seed: int = 0, sigmas=None,
              write_grids: bool = True, size: int = 64,
              overrides: dict | None = None):
    """Run the matrix and write <task>_bench.csv (plus grids) to out_dir.
    Returns (csv_path, rows)."""
    if task not in ("denoise", "deblur", "inpaint"):
        raise ConfigError(f"bench does not support task {task!r}")
    corpus = load_corpus(corpus_dir, size)
    os.makedirs(out_dir, exist_ok=True)
    if methods is None:
        methods = {"denoise": DENOISE_METHODS, "deblur": DEBLUR_METHODS,
                   "inpaint": INPAINT_METHODS}[task]
    methods = [canonical_pde(m) for m in methods]

    rows = []
    for image_name, image in corpus.items():
        if task == "denoise":
            for sigma in (sigmas if sigmas is not None else (0.1, 0.25)):
                panels = [("input", image)]
                first = True
                for method in methods:
                    t0 = time.perf_counter()
                    res = run_denoise(image, method, sigma=sigma, seed=seed,
                                      overrides=overrides)
                    wall_ms = 1000.0 * (time.perf_counter() - t0)
                    if first:
                        panels.append(("noisy", res.noisy))
                        first = False
                    panels.append((method, res.output))
                    rows.append(_row(image_name, method,
                                     {"sigma": sigma, "seed": seed},
                                     res.report_output, wall_ms))
                if write_grids and len(panels) > 1:
                    _write_grid(panels, out_dir,
                                f"{task}_{_safe(image_name)}_s{_safe(sigma)}")
        elif task == "deblur":
            for sigma in (sigmas if sigmas is not None else (0.0, 0.05)):
                panels = [("input", image)]
                first = True
                for method in methods:
                    t0 = time.perf_counter()
                    res = run_deblur(image, method, noise_sigma=sigma, seed=seed,
                                     overrides=overrides)
                    wall_ms = 1000.0 * (time.perf_counter() - t0)
                    if first:
                        panels.append(("blurred", res.degraded))
                        first = False
                    panels.append((method, res.output))
                    rows.append(_row(image_name, method,
                                     {"noise": sigma, "seed": seed},
                                     res.report_output, wall_ms))
                if write_grids and len(panels) > 1:
                    _write_grid(panels, out_dir,
                                f"{task}_{_safe(image_name)}_n{_safe(sigma)}")
        else:  # inpaint
            mask = stroke_mask(*image.shape, strokes=6, seed=seed)
            panels = [("input", image)]
            first = True
            for method in methods:
                t0 = time.perf_counter()
                res = run_inpaint(image, mask, method, overrides=overrides)
                wall_ms = 1000.0 * (time.perf_counter() - t0)
                if first:
                    panels.append(("damaged", res.damaged))
                    first = False
                panels.append((method, res.output))
                rows.append(_row(image_name, method,
                                 {"strokes": 6, "seed": seed},
                                 res.report_global, wall_ms))
            if write_grids and len(panels) > 1:
                _write_grid(panels, out_dir, f"{task}_{_safe(image_name)}")

    csv_path = os.path.join(out_dir, f"{task}_bench.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in CSV_COLUMNS])
    return csv_path, rows


def _row(image_name, method, params, report, wall_ms):
    return {
        "image": image_name,
        "method": method,
        "params": _params_string(params),
        "mse": _fmt(report.mse),
        "psnr": _fmt(report.psnr),
        "ssim": _fmt(report.ssim),
        "q": _fmt(report.q),
        "wall_ms": f"{wall_ms:.3f}",
    }


def _write_grid(panels, out_dir, stem):
    labels = [name for name, _ in panels]
    arrays = [np.asarray(arr, dtype=np.float64) for _, arr in panels]
    write_pgm(make_grid(arrays, labels), os.path.join(out_dir, stem + ".pgm"))
