"""Scenario-config schema checks: defaults, typed validation, error
aggregation with dotted field paths, and document round-tripping."""

import json
import math

import pytest

from nspsim import (ConfigError, ScenarioConfig, bundled_config_names,
                    from_dict, load_bundled_config, load_config)

MINIMAL = {
    "array": {"num_tx": 4, "num_rx": 3, "element_spacing": 0.05,
              "carrier_freq": 3.0e9},
    "waveform": {"family": "orthogonal", "bandwidth": 1e7, "num_samples": 400},
    "scene": {"angle_deg": 0.0, "target_range": 450.0, "radial_velocity": 300.0},
    "trials": 2,
    "seed": 7,
}


def make_doc(**overrides):
    doc = json.loads(json.dumps(MINIMAL))
    doc.update(overrides)
    return doc


def errors_of(doc):
    with pytest.raises(ConfigError) as exc:
        from_dict(doc)
    return str(exc.value)


def test_minimal_document_fills_defaults():
    cfg = from_dict(make_doc())
    assert cfg.array.num_tx == 4 and cfg.array.num_rx == 3
    assert cfg.array.propagation_speed == 3.0e8
    assert cfg.waveform.num_samples == 400
    assert cfg.channels.rx_antennas_per_bs == (2, 4, 6, 8)
    assert cfg.channels.csi_error_std == 0.0
    assert cfg.noise.noiseless is True and cfg.noise.snr_db is None
    assert cfg.grids.angle_start_deg == -90.0 and cfg.grids.angle_stop_deg == 90.0
    assert cfg.grids.angle_step_deg == 0.1
    assert cfg.grids.delay_window is None
    assert cfg.grids.doppler_stop_hz == 100e3 and cfg.grids.doppler_step_hz == 100.0
    assert cfg.trials == 2 and cfg.seed == 7
    assert cfg.output_dir is None


def test_duration_converts_to_num_samples():
    doc = make_doc()
    doc["waveform"] = {"family": "orthogonal", "bandwidth": 1e7, "duration": 1e-3}
    cfg = from_dict(doc)
    assert cfg.waveform.num_samples == 10000


def test_num_samples_and_duration_are_mutually_exclusive():
    doc = make_doc()
    doc["waveform"]["duration"] = 1e-3
    msg = errors_of(doc)
    assert "waveform" in msg and "num_samples" in msg and "duration" in msg
    doc = make_doc()
    del doc["waveform"]["num_samples"]
    msg = errors_of(doc)
    assert "waveform" in msg


def test_missing_required_sections_all_reported():
    msg = errors_of({})
    for field in ("array", "waveform", "scene", "trials", "seed"):
        assert field in msg


def test_unknown_keys_rejected_with_dotted_paths():
    doc = make_doc()
    doc["array"]["num_elements"] = 4
    doc["frobnicate"] = True
    msg = errors_of(doc)
    assert "array.num_elements" in msg
    assert "frobnicate" in msg


def test_multiple_errors_collected_in_one_raise():
    doc = make_doc()
    doc["array"]["num_tx"] = 0
    doc["scene"]["target_range"] = -5.0
    doc["trials"] = 0
    msg = errors_of(doc)
    assert "array" in msg and "num_tx" in msg
    assert "scene" in msg and "target_range" in msg
    assert "trials" in msg
    assert len(msg.splitlines()) == 3  # one line per problem


def test_type_errors_name_the_field():
    doc = make_doc()
    doc["array"]["num_tx"] = 4.5
    msg = errors_of(doc)
    assert "array.num_tx" in msg and "integer" in msg
    doc = make_doc()
    doc["array"]["num_tx"] = True  # booleans are not acceptable integers
    assert "array.num_tx" in errors_of(doc)
    doc = make_doc()
    doc["seed"] = "abc"
    assert "seed" in errors_of(doc)


def test_channel_list_validation():
    doc = make_doc(channels={"rx_antennas_per_bs": [2, 0, 3]})
    assert "channels.rx_antennas_per_bs" in errors_of(doc)
    doc = make_doc(channels={"rx_antennas_per_bs": []})
    assert "channels.rx_antennas_per_bs" in errors_of(doc)
    doc = make_doc(channels={"rx_antennas_per_bs": [2, 3], "csi_error_std": -0.1})
    assert "channels.csi_error_std" in errors_of(doc)
    cfg = from_dict(make_doc(channels={"rx_antennas_per_bs": [5, 1], "seed": 3}))
    assert cfg.channels.rx_antennas_per_bs == (5, 1)
    assert cfg.channels.seed == 3


def test_noise_section_requires_snr_when_not_noiseless():
    doc = make_doc(noise={"noiseless": False})
    assert "noise" in errors_of(doc)
    cfg = from_dict(make_doc(noise={"noiseless": False, "snr_db": -10.0}))
    assert cfg.noise.noiseless is False and cfg.noise.snr_db == -10.0


def test_grid_span_must_divide_evenly():
    doc = make_doc(grids={"angle_step_deg": 0.7})
    msg = errors_of(doc)
    assert "grids" in msg
    doc = make_doc(grids={"doppler_step_hz": 333.0})
    assert "grids" in errors_of(doc)
    cfg = from_dict(make_doc(grids={"angle_step_deg": 0.5, "delay_window": 20}))
    grid = cfg.grids.build(num_samples=400, true_delay=30)
    assert grid.angle_grid.size == 361
    assert grid.delay_grid[0] == 10 and grid.delay_grid[-1] == 50
    assert math.degrees(grid.angle_grid[0]) == pytest.approx(-90.0)


def test_grid_rejects_angles_beyond_quadrant():
    doc = make_doc(grids={"angle_start_deg": -100.0})
    assert "grids" in errors_of(doc)


def test_nullable_fields_accept_null():
    doc = make_doc(grids={"delay_window": None}, output_dir=None,
                   noise={"noiseless": True, "snr_db": None, "seed": None})
    cfg = from_dict(doc)
    assert cfg.grids.delay_window is None and cfg.output_dir is None
    doc = make_doc()
    doc["trials"] = None  # non-nullable
    assert "trials" in errors_of(doc)


def test_document_round_trip_preserves_config():
    cfg = load_bundled_config("reference")
    again = from_dict(cfg.to_doc())
    assert again == cfg
    assert again.to_doc() == cfg.to_doc()


def test_bundled_configs_load_and_validate():
    names = bundled_config_names()
    assert "reference" in names and "equal_antennas" in names
    for name in names:
        cfg = load_bundled_config(name)
        assert isinstance(cfg, ScenarioConfig)
        assert cfg.trials >= 1
    with pytest.raises(ConfigError) as exc:
        load_bundled_config("no_such_scenario")
    assert "available" in str(exc.value) and "reference" in str(exc.value)


def test_reference_values():
    cfg = load_bundled_config("reference")
    assert cfg.array.num_tx == 10 and cfg.array.num_rx == 7
    assert cfg.array.carrier_freq == 3.55e9
    assert cfg.array.element_spacing == 0.0642
    assert cfg.waveform.bandwidth == 1e7
    assert cfg.waveform.num_samples == 10000
    assert cfg.channels.rx_antennas_per_bs == (2, 4, 6, 8)
    assert cfg.scene.target_range == 5000.0
    assert cfg.scene.radial_velocity == 2000.0
    assert cfg.scene.angle == 0.0
    assert cfg.noise.noiseless is True
    assert cfg.trials == 100


def test_load_config_from_file(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(make_doc()), encoding="utf-8")
    cfg = load_config(path)
    assert cfg.array.num_tx == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(bad)
    missing_file = tmp_path / "nope.json"
    with pytest.raises(ConfigError):
        load_config(missing_file)


def test_top_level_non_object_rejected():
    with pytest.raises(ConfigError):
        from_dict([1, 2, 3])
    with pytest.raises(ConfigError):
        from_dict("scenario")


def test_scene_angle_bounds():
    doc = make_doc()
    doc["scene"]["angle_deg"] = 95.0
    assert "scene" in errors_of(doc)
    doc = make_doc()
    doc["scene"]["angle_deg"] = -90.0
    cfg = from_dict(doc)
    assert cfg.scene.angle == pytest.approx(math.radians(-90.0))
