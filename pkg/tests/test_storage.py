import math

import numpy as np
import pandas as pd
import pytest

from src.errors import InputError
from src.generators.signals import gen_chirp, gen_cusp
from src.storage.files import jsonable, load_signal, read_json, save_signal_files, write_json


def test_signal_round_trip(tmp_path):
    sig = gen_chirp(-0.3, 1.0, x0=0.25, L=10)
    files = save_signal_files(sig, tmp_path, "chirp")
    loaded = load_signal(files["csv"])
    assert np.array_equal(loaded.samples, sig.samples)
    assert loaded.x0 == 0.25
    assert loaded.meta["fit_j_min"] == sig.meta["fit_j_min"]
    assert loaded.meta["ps_truncation_level"] == sig.meta["ps_truncation_level"]


def test_sidecar_carries_theoretical_profile(tmp_path):
    files = save_signal_files(gen_cusp(0.6, L=10), tmp_path, "cusp", {"alpha": 0.6})
    data = read_json(files["json"])
    assert data["theoretical_profile"] is not None
    assert data["config"] == {"alpha": 0.6}


def test_missing_sidecar_uses_default_x0(tmp_path):
    path = tmp_path / "raw.csv"
    pd.DataFrame({"value": np.arange(256, dtype=float)}).to_csv(path, index=False)
    sig = load_signal(path)
    assert sig.x0 == 0.5
    assert sig.N == 256


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_signal(tmp_path / "absent.csv")


def test_missing_value_column(tmp_path):
    path = tmp_path / "bad.csv"
    pd.DataFrame({"x": np.linspace(0, 1, 256)}).to_csv(path, index=False)
    with pytest.raises(InputError):
        load_signal(path)


def test_non_dyadic_length(tmp_path):
    path = tmp_path / "odd.csv"
    pd.DataFrame({"value": np.ones(300)}).to_csv(path, index=False)
    with pytest.raises(InputError):
        load_signal(path)


def test_infinities_survive_json(tmp_path):
    data = {"p": [1.0, math.inf], "p0": math.inf, "n": np.int64(3), "ok": np.bool_(True)}
    assert jsonable(data) == {"p": [1.0, "inf"], "p0": "inf", "n": 3, "ok": True}
    back = read_json(write_json(tmp_path / "x.json", data))
    assert back["p"] == [1.0, math.inf]
    assert math.isinf(back["p0"])


def test_unreadable_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(InputError):
        read_json(path)
