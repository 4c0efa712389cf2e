"""
`gen` command: build a reference signal and write <stem>.csv + <stem>.json.
"""

from pathlib import Path
from typing import Dict

from cli.run_config import RunConfig
from src.generators.signals import Signal, generate
from src.storage.files import load_signal, save_signal_files


def build_signal(cfg: RunConfig) -> Signal:
    """The configured signal: loaded from `input` when given, generated otherwise."""
    if cfg.input is not None:
        return load_signal(cfg.input)
    return generate(cfg.generator, cfg.generator_params(), cfg.x0, cfg.L)


def cmd_gen(cfg: RunConfig) -> Dict[str, Path]:
    signal = generate(cfg.generator, cfg.generator_params(), cfg.x0, cfg.L)
    stem = cfg.default_stem()
    files = save_signal_files(signal, Path(cfg.output_dir) / "signals", stem, cfg.echo())

    print(f"[GEN] ✓ {signal.generator} N={signal.N} x0={signal.x0}")
    if signal.meta.get("l_max") is not None:
        print(f"[GEN]   teeth l <= {signal.meta['l_max']}, fit levels from {signal.meta['fit_j_min']}")
    if signal.meta.get("resolution_warning"):
        print(f"[GEN] ⚠ finest tooth narrower than the resolution threshold")
    for kind, path in files.items():
        print(f"[GEN]   {kind}: {path}")
    return files
