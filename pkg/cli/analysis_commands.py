"""
`analyze` and `classify` commands.

analyze  -> scaling function, h_min, structure tables, p-exponent profile,
            leader tables and direct-estimator tables
classify -> SingularityReport JSON
"""

import math
from pathlib import Path
from typing import Dict

from cli.gen_commands import build_signal
from cli.run_config import RunConfig
from src.classify.singularity import classify_singularity
from src.errors import EstimationError
from src.estimation.pexp import prepare, profile_from_coeffs
from src.leaders.pleaders import leaders_for
from src.storage.files import (
    p_label, save_coeffs_csv, save_leaders_files, save_profile_files, save_report_json, save_scaling_files,
)
from src.wavelets.fractional import fractional_integrate_fourier


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return f"{v:.3f}"


def cmd_analyze(cfg: RunConfig) -> Dict[str, Path]:
    signal = build_signal(cfg)
    if cfg.integrate_fourier > 0:
        signal = fractional_integrate_fourier(signal, cfg.integrate_fourier)
    x0 = signal.x0 if cfg.x0 is None else cfg.x0
    stem = cfg.default_stem() + (f"_s{cfg.s:g}" if cfg.s else "")
    out_dir = Path(cfg.output_dir) / "analyses"
    echo = cfg.echo()
    est = cfg.estimation()

    coeffs, scaling = prepare(signal, cfg.p_grid, est)
    files = save_scaling_files(scaling, coeffs, out_dir, stem, echo)
    profile = profile_from_coeffs(coeffs, x0, cfg.p_grid, cfg.s, scaling, est, signal)
    files.update(save_profile_files(profile, out_dir, stem, echo))
    if cfg.export_fields:
        files["coeffs"] = save_coeffs_csv(coeffs, out_dir / f"{stem}_coeffs.csv")
        for p in cfg.p_grid:
            name = f"field_p{p_label(p)}"
            files[name] = save_leaders_files(leaders_for(coeffs, p, cfg.s), out_dir, f"{stem}_{name}", echo)["csv"]

    print("=" * 60)
    print(f"[ANALYZE] {signal.generator} x0={x0} s={cfg.s}")
    print(f"[ANALYZE] h_min={_fmt(scaling.hmin)}  p0={_fmt(scaling.p0_estimate)}  "
          f"fit levels {profile.fit_range[0]}..{profile.fit_range[1]}")
    for i, p in enumerate(profile.p_grid):
        mark = "✓" if profile.is_valid(i) else "✗"
        err = f"  ({profile.errors[i]})" if profile.errors[i] else ""
        print(f"  {mark} p={_fmt(p):>6}  eta={_fmt(scaling.eta[i]):>7}  h={_fmt(profile.h_hat[i]):>7}{err}")
    for w in profile.warnings:
        print(f"[ANALYZE] ⚠ {w}")
    print("=" * 60)

    if all(f is None for f in profile.fits):
        raise EstimationError(f"no p-exponent could be estimated at x0={x0}; partial outputs in {out_dir}")
    return files


def cmd_classify(cfg: RunConfig) -> Dict[str, Path]:
    signal = build_signal(cfg)
    if cfg.integrate_fourier > 0:
        signal = fractional_integrate_fourier(signal, cfg.integrate_fourier)
    x0 = signal.x0 if cfg.x0 is None else cfg.x0
    report = classify_singularity(signal, x0, cfg.classification())
    path = save_report_json(report, Path(cfg.output_dir) / "reports" / f"{cfg.default_stem()}_report.json",
                            cfg.echo())

    print(f"[CLASSIFY] {signal.generator} x0={x0}: {report.label}  beta_hat={_fmt(report.beta_hat)}")
    for reason in report.reasons:
        print(f"[CLASSIFY] ⚠ {reason}")
    print(f"[CLASSIFY]   report: {path}")
    return {"report": path}
