import json

import numpy as np
import pytest

from lrctk.codefile import code_from_dict, code_to_dict, load_code, save_code
from lrctk.constructions import parity_split_code, pyramid_code
from lrctk.errors import ParseError
from lrctk.gf import make_field
from lrctk.locality import check_profile


def test_round_trip_with_profile_and_recipe(tmp_path):
    code, prof, rec = pyramid_code(4, 2, 2, 3, make_field(7))
    path = tmp_path / "pyr.json"
    save_code(path, code, prof, rec)
    code2, prof2, rec2 = load_code(path)
    assert np.array_equal(code.G, code2.G)
    assert code2.systematic_columns == code.systematic_columns
    assert prof2.r == 2 and prof2.delta == 2 and prof2.mode == "information"
    assert [g.support for g in prof2.groups] == [g.support for g in prof.groups]
    assert rec2.kind == "pyramid" and rec2.params == rec.params
    assert check_profile(code2, prof2) == []


def test_file_coordinates_are_one_based(tmp_path):
    code, prof, rec = parity_split_code(3, 2, 2, make_field(7))
    doc = code_to_dict(code, prof, rec)
    assert min(c for g in doc["locality"]["groups"] for c in g["support"]) == 1
    assert doc["format"] == 1
    assert doc["systematic_columns"][0] == 1


def test_extension_field_round_trip(tmp_path):
    from lrctk.codes import from_generator

    F4 = make_field(4)
    code = from_generator([[1, 0, 1, 1], [0, 1, 1, 2]], F4)
    path = tmp_path / "gf4.json"
    save_code(path, code)
    code2, prof2, rec2 = load_code(path)
    assert code2.field.q == 4 and code2.field.modulus == (1, 1, 1)
    assert prof2 is None and rec2 is None
    assert np.array_equal(code.G, code2.G)


def test_rank_deficient_names_rows():
    doc = {"format": 1, "q": 2, "n": 3, "k": 2,
           "generator": [[1, 0, 1], [1, 0, 1]]}
    with pytest.raises(ParseError) as e:
        code_from_dict(doc)
    assert "rows [2]" in str(e.value)


def test_bad_field_rejected():
    doc = {"format": 1, "q": 6, "n": 2, "k": 1, "generator": [[1, 1]]}
    with pytest.raises(ParseError):
        code_from_dict(doc)


def test_shape_mismatch_rejected():
    doc = {"format": 1, "q": 2, "n": 3, "k": 2, "generator": [[1, 0, 1]]}
    with pytest.raises(ParseError):
        code_from_dict(doc)


def test_malformed_locality_rejected():
    doc = {"format": 1, "q": 2, "n": 3, "k": 1, "generator": [[1, 1, 1]],
           "locality": {"r": 1, "delta": 2, "mode": "all_symbol",
                        "groups": [{"support": [1, 2]}]}}
    with pytest.raises(ParseError):
        code_from_dict(doc)


def test_unreadable_file(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_code(p)


def test_compact_deterministic_serialization(tmp_path):
    code, prof, rec = pyramid_code(4, 2, 2, 3, make_field(7))
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_code(p1, code, prof, rec)
    save_code(p2, code, prof, rec)
    assert p1.read_bytes() == p2.read_bytes()
    doc = json.loads(p1.read_text())
    assert doc == code_to_dict(code, prof, rec)
