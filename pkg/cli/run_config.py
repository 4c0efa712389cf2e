"""
RunConfig: every CLI setting with its default.

Values come from (lowest to highest priority) the field defaults, a JSON or
YAML config file, then explicit command-line flags. The resolved config is
echoed into every output file.
"""

import json
import math
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

import config
from src.errors import InputError
from src.estimation.pexp import EstimationConfig
from src.classify.singularity import ClassifyConfig
from src.generators.signals import GENERATORS


# ============================================================
# MODELS
# ============================================================

def _to_float(v):
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "infinity", "∞"):
        return math.inf
    return float(v)


class RunConfig(BaseModel):
    command: str = Field("analyze", description="gen | analyze | classify")

    # signal source: a saved CSV or a generator
    input: Optional[Path] = Field(None, description="signal CSV written by `gen` (sidecar JSON next to it)")
    generator: str = Field("cusp", description=f"one of {', '.join(GENERATORS)}")
    alpha: float = Field(0.6, description="cusp / chirp / comb / self-similar exponent")
    beta: float = Field(1.0, description="chirp oscillation exponent (complex exponent for selfsimilar)")
    gamma: float = Field(3.0, description="comb lacunarity (cusp exponent for cusp_plus_chirp)")
    pieces: List[Tuple[float, float]] = Field(default_factory=lambda: [(0.0, 0.5), (1.0, 0.0)],
                                              description="general comb affine pieces (a_n, b_n)")
    family_p0: float = Field(math.inf, description="general comb p0")
    damping: bool = Field(False, description="general comb 1/l^2 tooth damping")
    schedule: str = Field("dyadic", description="general comb tooth-to-piece schedule: dyadic | cyclic")
    ratio: Optional[float] = Field(None, description="self-similar log-period ratio a")
    omega_plus: Optional[List[float]] = Field(None, description="self-similar omega_+ samples (one period)")
    omega_minus: Optional[List[float]] = Field(None, description="self-similar omega_- samples (one period)")
    x0: Optional[float] = Field(None, description="analysis point (generator default when unset)")
    L: int = Field(config.DEFAULT_L, description="log2 of the number of samples")
    seed: int = Field(config.DEFAULT_SEED, description="wgn seed")

    # analysis
    n_vanishing: int = Field(config.DEFAULT_N_VANISHING, description="Daubechies vanishing moments")
    J: Optional[int] = Field(None, description="deepest DWT level (default L-2 or less)")
    p_grid: List[float] = Field(default_factory=lambda: list(config.DEFAULT_P_GRID))
    s: float = Field(0.0, description="(p,s)-leader integration order for analyze")
    integrate_fourier: float = Field(0.0, description="Fourier-domain integration applied before analyze")
    s_list: List[float] = Field(default_factory=lambda: list(config.DEFAULT_S_LIST))
    fit_j1: Optional[int] = None
    fit_j2: Optional[int] = None
    global_j1: Optional[int] = None
    global_j2: Optional[int] = None
    margin: float = config.ADMISSIBILITY_MARGIN
    include_clipped: Optional[bool] = None
    with_direct: bool = Field(True, description="export direct-estimator tables for p >= 1")
    export_fields: bool = Field(False, description="also write the coefficient CSV and full leader fields")

    # classification
    tol_invariance: float = config.TOL_INVARIANCE
    tol_canonical: float = config.TOL_CANONICAL
    beta_significance: float = config.BETA_SIGNIFICANCE

    # output
    output_dir: Path = config.OUTPUT_DIR
    stem: Optional[str] = None

    @field_validator("p_grid", "s_list", mode="before")
    @classmethod
    def _parse_floats(cls, v):
        if isinstance(v, str):
            v = [x for x in v.replace(",", " ").split() if x]
        return [_to_float(x) for x in v]

    @field_validator("family_p0", mode="before")
    @classmethod
    def _parse_p0(cls, v):
        return _to_float(v)

    @field_validator("generator")
    @classmethod
    def _known_generator(cls, v):
        if v not in GENERATORS:
            raise ValueError(f"unknown generator {v!r}, expected one of {GENERATORS}")
        return v

    @field_validator("L")
    @classmethod
    def _check_L(cls, v):
        if v < config.MIN_L:
            raise ValueError(f"L must be >= {config.MIN_L}")
        return v

    @model_validator(mode="after")
    def _check_grids(self):
        if not self.p_grid or any(p <= 0 for p in self.p_grid):
            raise ValueError("p_grid must be non-empty and positive")
        if any(s < 0 for s in self.s_list) or self.s < 0 or self.integrate_fourier < 0:
            raise ValueError("integration orders must be >= 0")
        self.p_grid = sorted(self.p_grid)
        return self

    # ------------------------------------------------------------

    def generator_params(self) -> Dict:
        if self.generator in ("cusp",):
            return {"alpha": self.alpha}
        if self.generator == "chirp":
            return {"alpha": self.alpha, "beta": self.beta}
        if self.generator == "comb":
            return {"alpha": self.alpha, "gamma": self.gamma}
        if self.generator == "general_comb":
            return {"pieces": [list(pc) for pc in self.pieces], "p0": self.family_p0, "damping": self.damping,
                    "schedule": self.schedule}
        if self.generator == "selfsimilar":
            return {"alpha": self.alpha, "beta": self.beta, "ratio": self.ratio,
                    "omega_plus": self.omega_plus, "omega_minus": self.omega_minus}
        if self.generator == "cusp_plus_chirp":
            return {"gamma": self.gamma, "alpha": self.alpha, "beta": self.beta}
        return {"seed": self.seed}

    def default_stem(self) -> str:
        if self.stem:
            return self.stem
        if self.input is not None:
            return Path(self.input).stem
        parts = [self.generator]
        for key, value in self.generator_params().items():
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                parts.append(f"{key}{value:g}")
            elif isinstance(value, str):
                parts.append(value)
        parts.append(f"L{self.L}")
        return "_".join(parts)

    def estimation(self) -> EstimationConfig:
        fit_range = (self.fit_j1, self.fit_j2) if self.fit_j1 is not None and self.fit_j2 is not None else None
        global_range = (self.global_j1, self.global_j2) if self.global_j1 is not None and self.global_j2 is not None else None
        return EstimationConfig(
            n_vanishing=self.n_vanishing,
            J=self.J,
            fit_range=fit_range,
            global_fit_range=global_range,
            margin=self.margin,
            include_clipped=self.include_clipped,
            with_direct=self.with_direct,
        )

    def classification(self) -> ClassifyConfig:
        return ClassifyConfig(
            p_grid=self.p_grid,
            s_list=self.s_list,
            tol_invariance=self.tol_invariance,
            tol_canonical=self.tol_canonical,
            beta_significance=self.beta_significance,
            estimation=self.estimation(),
        )

    def echo(self) -> Dict:
        return self.model_dump(mode="python")


# ============================================================
# LOADING
# ============================================================

def load_config_file(path: Path) -> Dict:
    """JSON or YAML mapping of RunConfig fields."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read config {path}: {e}")
    try:
        data = yaml.safe_load(text) if path.suffix.lower() in (".yaml", ".yml") else json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise InputError(f"malformed config {path}: {e}")
    if not isinstance(data, dict):
        raise InputError(f"config {path} must hold a mapping")
    return data


def resolve_config(command: str, flags: Dict, config_path: Optional[Path] = None) -> RunConfig:
    """Defaults < config file < explicit flags (None means "not given")."""
    merged = load_config_file(config_path) if config_path else {}
    merged.update({k: v for k, v in flags.items() if v is not None})
    merged["command"] = command
    return RunConfig(**merged)
