"""
CSV + JSON output and signal loading.

CSVs have a header row and a fixed column order; JSON is indented, with
infinities written as the string "inf". Every writer that gets a config
echoes it next to its outputs as <stem>.config.json.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

import config
from src.errors import InputError, PExpError
from src.estimation.scaling import structure_table
from src.generators.profiles import theoretical_profile
from src.generators.signals import Signal

logger = logging.getLogger(__name__)


# ============================================================
# JSON HELPERS
# ============================================================

def jsonable(obj: Any) -> Any:
    """Plain JSON types; inf / nan become strings, numpy scalars become Python ones."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _restore_floats(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _restore_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_restore_floats(v) for v in obj]
    if obj in ("inf", "-inf", "nan"):
        return float(obj)
    return obj


def write_json(path: Path, data: Dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(jsonable(data), f, indent=2, ensure_ascii=False)
    return path


def read_json(path: Path) -> Dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return _restore_floats(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}")


def write_csv(df: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    return path


def write_config_echo(out_dir: Path, stem: str, run_config: Optional[Dict]) -> Optional[Path]:
    if run_config is None:
        return None
    return write_json(Path(out_dir) / f"{stem}.config.json", run_config)


# ============================================================
# SIGNALS
# ============================================================

def signal_sidecar(signal: Signal, run_config: Optional[Dict] = None) -> Dict:
    data = {"meta": signal.meta, "x0": signal.x0, "L": signal.L, "N": signal.N}
    try:
        data["theoretical_profile"] = theoretical_profile(signal.meta).to_dict()
    except PExpError:
        data["theoretical_profile"] = None
    if run_config is not None:
        data["config"] = run_config
    return data


def save_signal_files(signal: Signal, out_dir: Path, stem: str,
                      run_config: Optional[Dict] = None) -> Dict[str, Path]:
    """<stem>.csv (index, x, value) and <stem>.json (meta, theoretical profile, config)."""
    out_dir = Path(out_dir)
    files = {
        "csv": write_csv(signal.to_frame(), out_dir / f"{stem}.csv"),
        "json": write_json(out_dir / f"{stem}.json", signal_sidecar(signal, run_config)),
    }
    logger.info("signal saved: %s", files["csv"])
    return files


def load_signal(csv_path: Path) -> Signal:
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise InputError(f"signal file not found: {csv_path}")
    try:
        df = pd.read_csv(csv_path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InputError(f"cannot parse {csv_path}: {e}")
    if "value" not in df.columns:
        raise InputError(f"{csv_path}: missing 'value' column")

    sidecar = csv_path.with_suffix(".json")
    meta, x0 = {}, config.DEFAULT_X0
    if sidecar.exists():
        data = read_json(sidecar)
        meta = data.get("meta", {})
        x0 = data.get("x0", meta.get("x0", x0))
    else:
        logger.warning("no sidecar for %s: x0 defaults to %s", csv_path.name, x0)
    try:
        return Signal(df["value"].to_numpy(dtype=float), float(x0), meta)
    except PExpError as e:
        raise InputError(f"{csv_path}: {e.detail}")


# ============================================================
# ANALYSIS OUTPUTS
# ============================================================

def p_label(p: float) -> str:
    return "inf" if math.isinf(p) else f"{p:g}"


def save_coeffs_csv(coeffs, path: Path) -> Path:
    """(j, k, value, boundary_flag)."""
    return write_csv(coeffs.to_frame(), path)


def save_leaders_files(field_, out_dir: Path, stem: str, run_config: Optional[Dict] = None) -> Dict[str, Path]:
    """(j, k, value, clipped_flag) plus JSON metadata (p, s, wavelet, truncation level)."""
    out_dir = Path(out_dir)
    meta = {"p": field_.p, "s": field_.s, **field_.meta}
    files = {
        "csv": write_csv(field_.to_frame(), out_dir / f"{stem}.csv"),
        "json": write_json(out_dir / f"{stem}.json", meta),
    }
    write_config_echo(out_dir, stem, run_config)
    return files


def save_scaling_files(scaling, coeffs, out_dir: Path, stem: str,
                       run_config: Optional[Dict] = None) -> Dict[str, Path]:
    """(p, eta, stderr, admissible), per-p (j, log2_scale, log2_S) and a JSON summary."""
    out_dir = Path(out_dir)
    files = {"scaling": write_csv(scaling.to_frame(), out_dir / f"{stem}_scaling.csv")}
    for p in scaling.p_grid:
        if math.isfinite(p):
            files[f"S_p{p_label(p)}"] = write_csv(structure_table(coeffs, p),
                                                out_dir / f"{stem}_structure_p{p_label(p)}.csv")
    summary = {
        "p0_estimate": scaling.p0_estimate,
        "hmin": scaling.hmin,
        "hmin_stderr": scaling.hmin_fit.stderr if scaling.hmin_fit else None,
        "scaling": scaling.to_dict(),
    }
    if run_config is not None:
        summary["config"] = run_config
    files["summary"] = write_json(out_dir / f"{stem}_summary.json", summary)
    write_config_echo(out_dir, stem, run_config)
    return files


def save_profile_files(profile, out_dir: Path, stem: str, run_config: Optional[Dict] = None) -> Dict[str, Path]:
    """Profile CSV, per-p leader tables and, when present, direct-estimator tables."""
    out_dir = Path(out_dir)
    files = {"profile": write_csv(profile.to_frame(), out_dir / f"{stem}_profile.csv")}
    for p, table in profile.leader_tables.items():
        files[f"leaders_p{p_label(p)}"] = write_csv(table, out_dir / f"{stem}_leaders_p{p_label(p)}.csv")
    for p, result in profile.direct.items():
        files[f"direct_p{p_label(p)}"] = write_csv(result.to_frame(), out_dir / f"{stem}_direct_p{p_label(p)}.csv")
    write_config_echo(out_dir, stem, run_config)
    return files


def save_report_json(report, path: Path, run_config: Optional[Dict] = None) -> Path:
    data = report.to_dict()
    if run_config is not None:
        data["config"] = run_config
    return write_json(path, data)
