import json

import pytest

from workbench.core_semigroup import build_cyclic_group, build_example
from workbench.errors import MalformedTable, ParseError
from workbench.ordered_groupoid import build_connected_groupoid, esn_forward
from workbench.tables import (
    document_kind,
    groupoid_from_document,
    groupoid_to_text,
    parse_document,
    read_groupoid,
    read_semigroup,
    read_text,
    records_to_text,
    semigroup_from_document,
    semigroup_to_text,
    write_groupoid,
)

Z2_TEXT = '{\n  "names": ["0", "1"],\n  "mul": [\n    [0, 1],\n    [1, 0]\n  ],\n  "identity": 0\n}\n'
MISSING_11 = [[0, 0, 0], [0, 1, 1], [1, 0, 1]]


def load(text: str):
    return semigroup_from_document(parse_document(text), text)


class TestSemigroupFiles:
    def test_exact_text(self):
        assert semigroup_to_text(build_example("Z2")) == Z2_TEXT

    def test_zero_is_written(self):
        text = semigroup_to_text(build_example("chain2"))
        assert '"identity": 0' in text
        assert '"zero": 1' in text

    def test_round_trip(self, small_example, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(semigroup_to_text(small_example), encoding="utf-8")
        S = read_semigroup(path)
        assert S.names == small_example.names
        assert S.same_table(small_example)
        assert (S.identity, S.zero) == (small_example.identity, small_example.zero)

    def test_rewrite_is_stable(self, semigroup_file):
        path = semigroup_file("I2")
        first = path.read_text(encoding="utf-8")
        assert semigroup_to_text(read_semigroup(path)) == first

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="No existe"):
            read_text(tmp_path / "nope.json")


class TestParseErrors:
    def test_empty(self):
        with pytest.raises(ParseError) as err:
            parse_document("  \n")
        assert (err.value.line, err.value.column) == (1, 1)

    def test_bad_json(self):
        with pytest.raises(ParseError) as err:
            parse_document('{\n  "names": [\n')
        assert err.value.line is not None and err.value.line >= 2

    def test_not_an_object(self):
        with pytest.raises(ParseError):
            parse_document("[1, 2]")

    def test_unknown_key(self):
        with pytest.raises(ParseError, match="<root>"):
            load('{"names": ["0"], "mul": [[0]], "extra": 1}')

    def test_negative_entry(self):
        text = '{\n  "names": ["0"],\n  "mul": [[-1]]\n}'
        with pytest.raises(ParseError) as err:
            load(text)
        assert err.value.message.startswith("mul/0/0")
        assert err.value.line == 3

    def test_missing_mul(self):
        with pytest.raises(ParseError, match="'mul' is a required property"):
            load('{"names": ["0"]}')


class TestTableErrors:
    def test_out_of_range(self):
        with pytest.raises(MalformedTable):
            load('{"names": ["0", "1"], "mul": [[0, 2], [1, 0]]}')

    def test_declared_identity_mismatch(self):
        with pytest.raises(MalformedTable, match="identity"):
            load('{"names": ["0", "1"], "mul": [[0, 1], [1, 0]], "identity": 1}')

    def test_declared_zero_mismatch(self):
        with pytest.raises(MalformedTable, match="zero"):
            load('{"names": ["0", "1"], "mul": [[0, 1], [1, 0]], "zero": 0}')


class TestGroupoidFiles:
    def test_kind(self):
        assert document_kind(json.loads(groupoid_to_text(esn_forward(build_example("Z2"))))) == "groupoid"
        assert document_kind(json.loads(Z2_TEXT)) == "semigroup"

    @pytest.mark.parametrize(
        "make",
        [lambda: esn_forward(build_example("I2")), lambda: build_connected_groupoid(2, build_cyclic_group(2))],
    )
    def test_round_trip(self, make, tmp_path):
        G = make()
        path = write_groupoid(tmp_path / "g.json", G)
        H = read_groupoid(path)
        assert (H.dom, H.ran, H.inv, H.names) == (G.dom, G.ran, G.inv, G.names)
        assert H.composites == G.composites
        assert (H.leq == G.leq).all()
        assert groupoid_to_text(H) == path.read_text(encoding="utf-8")

    def test_arrow_out_of_range(self):
        text = '{"arrows": [{"dom": 0, "ran": 0, "inv": 3}], "compose": [[0, 0, 0]]}'
        with pytest.raises(MalformedTable):
            groupoid_from_document(parse_document(text), text)

    def test_missing_composite(self):
        text = json.dumps({"arrows": [{"dom": 0, "ran": 0, "inv": 0}, {"dom": 0, "ran": 0, "inv": 1}], "compose": MISSING_11})
        with pytest.raises(MalformedTable) as info:
            groupoid_from_document(parse_document(text), text)
        assert info.value.witness == (1, 1)

    def test_bad_arrow_key(self):
        text = '{"arrows": [{"dom": 0, "ran": 0, "inv": 0, "colour": "red"}], "compose": [[0, 0, 0]]}'
        with pytest.raises(ParseError):
            groupoid_from_document(parse_document(text), text)


def test_records():
    S = build_example("Z2")
    text = records_to_text(S.names, "sha", [{"eta": [0, 1]}, {"eta": [1, 0]}])
    assert text == '{\n  "names": ["0", "1"],\n  "kind": "sha",\n  "records": [\n    {"eta": [0, 1]},\n    {"eta": [1, 0]}\n  ]\n}\n'
    assert json.loads(text)["records"][1]["eta"] == [1, 0]
