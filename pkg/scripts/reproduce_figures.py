#!/usr/bin/env python3
"""
Generate every reference signal, analyse and classify it, and write the
plot-ready tables (structure functions, leader and direct-estimator scaling
tables, profiles, reports) under output/figures/<name>/.
"""
import sys
import argparse
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import FIGURES_DIR, setup_logging
from src.classify.singularity import ClassifyConfig, classify_singularity
from src.errors import PExpError
from src.estimation.pexp import EstimationConfig, prepare, profile_from_coeffs
from src.generators.profiles import theoretical_profile
from src.generators.signals import generate
from src.storage.files import (
    save_profile_files, save_report_json, save_scaling_files, save_signal_files, write_json,
)


# name -> (generator, params, L, extra integration orders for (p,s)-leader tables)
REFERENCE_SIGNALS = {
    "cusp_0.6": ("cusp", {"alpha": 0.6}, 16, [1.0]),
    "cusp_-0.4": ("cusp", {"alpha": -0.4}, 16, [0.5]),
    "chirp_-0.3_1": ("chirp", {"alpha": -0.3, "beta": 1.0}, 16, [1.0]),
    "chirp_0.5_1": ("chirp", {"alpha": 0.5, "beta": 1.0}, 16, [1.0]),
    "comb_-0.2_3": ("comb", {"alpha": -0.2, "gamma": 3.0}, 20, [1.0]),
    "comb_0.3_2": ("comb", {"alpha": 0.3, "gamma": 2.0}, 20, [1.0]),
    "general_comb_two_pieces": ("general_comb", {"pieces": [[0.0, 0.5], [1.0, 0.0]], "schedule": "cyclic"}, 20, []),
    "cusp_plus_chirp": ("cusp_plus_chirp", {"gamma": -0.2, "alpha": -0.3, "beta": 1.0}, 16, [0.3]),
    "selfsimilar_complex": ("selfsimilar", {"alpha": 0.4, "beta": 3.0}, 16, [1.0]),
    "wgn": ("wgn", {"seed": 0}, 16, []),
}


def reproduce_one(name: str, out_root: Path) -> dict:
    kind, params, L, s_extra = REFERENCE_SIGNALS[name]
    out_dir = out_root / name
    print(f"[{name}] generating {kind} {params} L={L}...")

    signal = generate(kind, params, None, L)
    save_signal_files(signal, out_dir, name)

    est = EstimationConfig(with_direct=True)
    coeffs, scaling = prepare(signal, ClassifyConfig().p_grid, est)
    save_scaling_files(scaling, coeffs, out_dir, name)
    for s in [0.0] + s_extra:
        profile = profile_from_coeffs(coeffs, signal.x0, ClassifyConfig().p_grid, s, scaling, est, signal)
        save_profile_files(profile, out_dir, f"{name}_s{s:g}")

    report = classify_singularity(signal, signal.x0, ClassifyConfig(estimation=est))
    save_report_json(report, out_dir / f"{name}_report.json")

    theory = theoretical_profile(signal.meta)
    print(f"  ✓ label={report.label} beta_hat={report.beta_hat:.2f} "
          f"h_min={scaling.hmin if scaling.hmin is not None else float('nan'):.3f} p0={scaling.p0_estimate:.3g}")
    return {
        "label": report.label,
        "beta_hat": report.beta_hat,
        "hmin": scaling.hmin,
        "p0_estimate": scaling.p0_estimate,
        "p0_theory": theory.p0,
    }


def main():
    parser = argparse.ArgumentParser(description="Write the reference figure tables")
    parser.add_argument("--out", default=str(FIGURES_DIR))
    parser.add_argument("--only", nargs="+", choices=sorted(REFERENCE_SIGNALS))
    args = parser.parse_args()

    setup_logging()
    out_root = Path(args.out)
    names = args.only or list(REFERENCE_SIGNALS)

    print("=" * 60)
    print("REFERENCE FIGURE TABLES")
    print("=" * 60)

    results, failed = {}, {}
    for name in names:
        try:
            results[name] = reproduce_one(name, out_root)
        except PExpError as e:
            print(f"  ⚠ {name}: {e.detail}")
            failed[name] = e.detail

    write_json(out_root / "summary.json", {"results": results, "failed": failed})

    print("\n" + "=" * 60)
    print("SUMMARY")
    print("=" * 60)
    for name, res in results.items():
        print(f"  {name:<26} {res['label']}")
    if failed:
        print(f"  {len(failed)} signal(s) failed")
    print(f"\n✓ Tables written to {out_root}")


if __name__ == "__main__":
    main()
