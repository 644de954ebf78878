import pytest

from src.squeezing_measure.config import SolveOptions


def test_solve_options_defaults_and_overrides():
    opts = SolveOptions({"step_tol": 1e-5, "gradient_mode": "Numeric", "workers": 4})
    d = opts.to_dict()
    assert d["step_tol"] == 1e-5
    assert d["gradient_mode"] == "numeric"
    assert d["workers"] == 4
    # Defaults present
    assert d["f_tol"] == 1e-8
    assert d["constraint_tol"] == 1e-8
    assert d["penalty_growth"] == 10.0
    # get() fallback
    assert opts.get("nonexistent", 123) == 123


def test_from_dict_and_replace_keep_other_values():
    opts = SolveOptions.from_dict({"seed": 7, "max_iter": 500})
    changed = opts.replace(max_iter=100)
    assert changed.max_iter == 100
    assert changed.seed == 7
    assert opts.max_iter == 500


@pytest.mark.parametrize("bad", [
    {"step_tol": 0},
    {"f_tol": -1e-8},
    {"max_iter": 0},
    {"penalty_growth": 1.0},
    {"dilation": 0.5},
    {"gradient_mode": "magic"},
    {"sdp_method": "mosek"},
    {"workers": 0},
])
def test_invalid_options_raise(bad):
    with pytest.raises(ValueError):
        SolveOptions(bad)
