"""Regenerate the packaged exact-spectrum fixtures for the bundled datasets.

Run from the repo root after changing any generator:

    python3 scripts/precompute_exact.py
"""
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from freqspec.datasets import DATASETS, build_dataset, exact_fixture_to_json
from freqspec.spectrum import exact_spectrum

out_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "freqspec" / "data"

for name, info in DATASETS.items():
    if info.exact_sigma_min is None:
        continue
    db = build_dataset(name)
    t0 = time.perf_counter()
    ex = exact_spectrum(db, sigma_min=info.exact_sigma_min)
    dt = time.perf_counter() - t0
    path = out_dir / f"{name}_exact.json"
    path.write_text(exact_fixture_to_json(name, ex) + "\n")
    print(
        f"{name}: sigma_min={info.exact_sigma_min} "
        f"count={ex.count_at(info.exact_sigma_min)} ({dt:.2f}s) -> {path.name}"
    )
