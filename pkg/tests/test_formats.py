import pytest

from desops import (
    Description,
    DescriptiveResult,
    DiscRegion,
    HexagonRegion,
    PolygonRegion,
    SimplicialComplex,
    UnionConfig,
    build_glossa,
)
from desops.formats import (
    SchemaError,
    collection_from_json,
    complex_from_json,
    complex_to_json,
    element_set_from_json,
    element_set_to_json,
    glossa_from_json,
    glossa_to_json,
    region_from_json,
    region_to_json,
    result_to_json,
    union_config_from_json,
    union_config_to_json,
)

G0_JSON = {
    "dim": 1,
    "phi_empty": [0],
    "elements": [
        {"id": "B1", "desc": [1]},
        {"id": "B2", "desc": [2]},
        {"id": "B3", "desc": [1]},
        {"id": "B4", "desc": [3]},
    ],
}


class TestGlossaJson:
    def test_parse(self):
        g = glossa_from_json(G0_JSON)
        assert g.dim == 1
        assert g.element_ids == ("B1", "B2", "B3", "B4")
        assert g.desc_of["B4"] == Description.of([3])

    def test_roundtrip(self):
        g = glossa_from_json(G0_JSON)
        assert glossa_from_json(glossa_to_json(g)).pairs == g.pairs

    def test_roundtrip_with_coords(self):
        obj = {
            "dim": 2,
            "phi_empty": [0, 0],
            "elements": [{"id": "a", "desc": [1, 2], "coords": [3, 4]}],
        }
        g = glossa_from_json(obj)
        assert g.coords_of("a") == (3, 4)
        assert glossa_to_json(g) == obj

    def test_missing_field_named(self):
        with pytest.raises(SchemaError, match="phi_empty"):
            glossa_from_json({"dim": 1, "elements": []})

    def test_element_errors_carry_index(self):
        bad = dict(G0_JSON, elements=[{"id": "a", "desc": "nope"}])
        with pytest.raises(SchemaError, match=r"elements\[0\]"):
            glossa_from_json(bad)

    def test_non_integer_coords_rejected(self):
        bad = {
            "dim": 1,
            "phi_empty": [0],
            "elements": [{"id": "a", "desc": [1], "coords": [1.5, 2]}],
        }
        with pytest.raises(SchemaError, match="coords"):
            glossa_from_json(bad)

    def test_construction_errors_become_schema_errors(self):
        bad = dict(G0_JSON, elements=[{"id": "a", "desc": [1, 2]}])
        with pytest.raises(SchemaError, match="glossa"):
            glossa_from_json(bad)

    def test_non_string_ids_unserializable(self):
        g = build_glossa([((1, 2), [0.5])], dim=1)
        with pytest.raises(SchemaError, match="not a string"):
            glossa_to_json(g)


class TestElementSetJson:
    def test_parse_and_validate(self):
        g = glossa_from_json(G0_JSON)
        assert element_set_from_json({"ids": ["B1", "B2"]}, g) == frozenset({"B1", "B2"})

    def test_unknown_id_rejected_when_glossa_given(self):
        g = glossa_from_json(G0_JSON)
        with pytest.raises(SchemaError, match="B9"):
            element_set_from_json({"ids": ["B9"]}, g)

    def test_sorted_on_write(self):
        assert element_set_to_json({"b", "a"}) == {"ids": ["a", "b"]}

    def test_non_string_id_rejected(self):
        with pytest.raises(SchemaError, match=r"ids\[1\]"):
            element_set_from_json({"ids": ["a", 3]})


class TestUnionConfigJson:
    def test_discriminatory_roundtrip(self):
        cfg = UnionConfig("restrictive", (Description.of([1, 2]),), eta=0.5)
        assert union_config_from_json(union_config_to_json(cfg)) == cfg

    def test_nondiscriminatory_roundtrip(self):
        cfg = UnionConfig("nonrestrictive")
        obj = union_config_to_json(cfg)
        assert obj["descriptive"] == "nondiscriminatory"
        assert union_config_from_json(obj) == cfg

    def test_eta_defaults_to_zero(self):
        cfg = union_config_from_json({"spatial": "restrictive", "descriptive": "nondiscriminatory"})
        assert cfg.eta == 0.0

    def test_unknown_descriptive_string_rejected(self):
        with pytest.raises(SchemaError, match="descriptive"):
            union_config_from_json({"spatial": "restrictive", "descriptive": "everything"})

    def test_bad_spatial_becomes_schema_error(self):
        with pytest.raises(SchemaError, match="config"):
            union_config_from_json({"spatial": "up", "descriptive": "nondiscriminatory"})

    def test_boolean_eta_rejected(self):
        with pytest.raises(SchemaError, match="eta"):
            union_config_from_json(
                {"spatial": "restrictive", "descriptive": "nondiscriminatory", "eta": True}
            )


class TestResultJson:
    def test_sorted_ids_and_flag(self):
        res = DescriptiveResult(frozenset({"b", "a"}), True)
        assert result_to_json(res) == {"ids": ["a", "b"], "includes_empty_set": True}


class TestCollectionJson:
    def test_parse(self):
        g = glossa_from_json(G0_JSON)
        got = collection_from_json({"members": [{"ids": ["B1"]}, {"ids": []}]}, g)
        assert got == [frozenset({"B1"}), frozenset()]

    def test_member_errors_carry_index(self):
        g = glossa_from_json(G0_JSON)
        with pytest.raises(SchemaError, match=r"members\[1\]"):
            collection_from_json({"members": [{"ids": []}, {"ids": ["nope"]}]}, g)


class TestComplexJson:
    def test_roundtrip_lexicographic(self):
        k = SimplicialComplex.of(3, [[2], [1], [3], [1, 2]])
        obj = complex_to_json(k)
        assert obj == {"n": 3, "faces": [[1], [1, 2], [2], [3]]}
        assert complex_from_json(obj) == k

    def test_closure_violation_becomes_schema_error(self):
        with pytest.raises(SchemaError, match="downward closed"):
            complex_from_json({"n": 2, "faces": [[1, 2]]})

    def test_non_integer_vertices_rejected(self):
        with pytest.raises(SchemaError, match=r"faces\[0\]"):
            complex_from_json({"n": 2, "faces": [["one"]]})


class TestRegionJson:
    def test_polygon_roundtrip(self):
        r = PolygonRegion(((0.5, 0.5), (3.5, 0.5), (2.0, 4.0)))
        assert region_from_json(region_to_json(r)) == r

    def test_hexagon_roundtrip(self):
        r = HexagonRegion((10, 12), 4.5)
        assert region_from_json(region_to_json(r)) == r

    def test_disc_roundtrip(self):
        r = DiscRegion((1.5, -2), 3)
        assert region_from_json(region_to_json(r)) == r

    def test_unknown_shape_rejected(self):
        with pytest.raises(SchemaError, match="shape"):
            region_from_json({"shape": "blob"})

    def test_polygon_vertex_arity_checked(self):
        with pytest.raises(SchemaError, match=r"vertices\[1\]"):
            region_from_json({"shape": "polygon", "vertices": [[0, 0], [1, 2, 3], [1, 1]]})

    def test_constructor_errors_become_schema_errors(self):
        with pytest.raises(SchemaError, match="region"):
            region_from_json({"shape": "disc", "center": [0, 0], "radius": -1})
        with pytest.raises(SchemaError, match="region"):
            region_from_json({"shape": "polygon", "vertices": [[0, 0], [1, 1]]})
