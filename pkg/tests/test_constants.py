import json
import math
from pathlib import Path

import numpy as np
import pytest

from tmyag import constants
from tmyag.errors import InvariantViolation, MissingField, ParseError

PACKAGED_JSON = Path(constants.__file__).parent / "data" / "constants_default.json"


def test_default_constants_load_and_validate():
    c = constants.load_constants("default")
    constants.validate(c)


def test_lande_factors_are_analytic():
    c = constants.load_constants()
    assert abs(c.g_J_ground - 7.0 / 6.0) < 1e-12
    assert abs(c.g_J_excited - 4.0 / 5.0) < 1e-12
    assert abs(constants.lande_g(5, 1, 6) - 7.0 / 6.0) < 1e-15
    assert abs(constants.lande_g(5, 1, 4) - 4.0 / 5.0) < 1e-15


def test_default_values_match_published_material_parameters():
    c = constants.load_constants()
    assert c.rho == 4564.0
    assert c.v_l == 8600.0
    assert c.v_t == 5000.0
    assert c.nu0 == 3.77868e14
    assert c.delta_CF0 == 8.3e11


def test_ground_tensor_dominates_excited_componentwise():
    c = constants.load_constants()
    for gg, ge in zip(c.gamma_J_ground, c.gamma_J_excited):
        assert abs(gg) > abs(ge)


def test_ground_gamma_projection_along_111():
    # Independent arithmetic: for sites 1/3/5 the local components of a unit
    # [111] field are (0, sqrt(2/3), sqrt(1/3)).
    c = constants.load_constants()
    _, gy, gz = c.gamma_J_ground
    eff = math.sqrt(2.0 / 3.0 * gy * gy + 1.0 / 3.0 * gz * gz)
    assert abs(eff / 4.00e8 - 1.0) < 0.05


def _config_doc():
    with open(PACKAGED_JSON, "r", encoding="utf-8") as fh:
        return json.load(fh)


def test_packaged_json_equals_compiled_default():
    assert constants.load_constants(str(PACKAGED_JSON)) == constants.load_constants()


def test_roundtrip_through_file(tmp_path):
    c = constants.load_constants()
    path = tmp_path / "constants.json"
    constants.write_constants(c, path)
    again = constants.load_constants(str(path))
    assert again == c
    assert again.provenance == c.provenance


def test_zero_velocity_is_invariant_violation(tmp_path):
    doc = _config_doc()
    doc["v_l"]["value"] = 0.0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation) as err:
        constants.load_constants(str(path))
    assert err.value.name == "v_l"
    assert err.value.got == 0.0


def test_wrong_lande_value_is_invariant_violation(tmp_path):
    doc = _config_doc()
    doc["g_J_ground"]["value"] = 1.2
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation) as err:
        constants.load_constants(str(path))
    assert err.value.name == "g_J_ground"


def test_excited_exceeding_ground_is_invariant_violation(tmp_path):
    doc = _config_doc()
    doc["gamma_J_excited"]["value"] = list(doc["gamma_J_ground"]["value"])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation):
        constants.load_constants(str(path))


def test_missing_field_error(tmp_path):
    doc = _config_doc()
    del doc["rho"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(MissingField, match="rho"):
        constants.load_constants(str(path))


def test_parse_error_carries_line_number(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n"g_J_ground": {"value": oops\n}')
    with pytest.raises(ParseError) as err:
        constants.load_constants(str(path))
    assert err.value.line == 2


def test_constants_hash_tracks_values(tmp_path):
    c = constants.load_constants()
    h1 = constants.constants_hash(c)
    assert h1 == constants.constants_hash(constants.load_constants())
    doc = _config_doc()
    doc["rho"]["value"] = 4600.0
    path = tmp_path / "mod.json"
    path.write_text(json.dumps(doc))
    assert constants.constants_hash(constants.load_constants(str(path))) != h1


def test_constants_are_immutable():
    c = constants.load_constants()
    with pytest.raises(AttributeError):
        c.rho = 1.0
    assert isinstance(c.gamma_J_ground, tuple)
