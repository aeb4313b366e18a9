import json

import pytest
from conftest import GF101
from pydantic import ValidationError

from exact.matrices import same
from tdpair.documents import (
    PairDocument,
    SystemDocument,
    dump_document,
    load_system,
    read_document,
    system_to_document,
)
from tdpair.errors import InadmissibleParametersError


def test_integers_become_text():
    doc = PairDocument.model_validate({"A": [[0, 1], [1, 0]], "Astar": [["1", 0], [0, "-1"]]})
    assert doc.A == [["0", "1"], ["1", "0"]]
    assert doc.field == "rational"
    assert doc.schema_version == 1


@pytest.mark.parametrize(
    "payload",
    [
        {"A": [[0, 1], [1, 0]], "Astar": [[1, 0]]},
        {"A": [], "Astar": []},
        {"A": [[True]], "Astar": [[1]]},
        {"A": [[1]], "Astar": [[1]], "field": "prime:8"},
        {"A": [[1]], "Astar": [[1]], "extra": 1},
    ],
)
def test_malformed_documents(payload):
    with pytest.raises(ValidationError):
        PairDocument.model_validate(payload)


def test_system_document_fields(kraw2):
    doc = system_to_document(kraw2[0])
    assert doc.d == 2
    assert doc.theta == ["2", "0", "-2"]
    assert doc.shape == [1, 1, 1]
    assert doc.A == [["0", "2", "0"], ["1", "0", "1"], ["0", "2", "0"]]


def test_dump_is_canonical(kraw1):
    text = dump_document(system_to_document(kraw1[0]))
    payload = json.loads(text)
    assert list(payload) == sorted(payload)
    assert payload["schema"] == 1
    assert text.endswith("\n")


def test_read_and_reload_system(tmp_path, kraw3_gf):
    path = tmp_path / "system.json"
    path.write_text(dump_document(system_to_document(kraw3_gf[0])))
    doc = read_document(path)
    assert isinstance(doc, SystemDocument)
    assert doc.field == "prime:101"
    system = load_system(doc)
    assert system.field == GF101
    assert system.theta == kraw3_gf[0].theta
    assert same(system.A, kraw3_gf[0].A)


def test_field_object_form():
    doc = PairDocument.model_validate({"field": {"kind": "prime", "p": 101}, "A": [[1]], "Astar": [[2]]})
    assert doc.field == "prime:101"
    assert doc.scalar_field == GF101
    with pytest.raises(ValidationError):
        PairDocument.model_validate({"field": {"kind": "prime", "p": 4}, "A": [[1]], "Astar": [[2]]})


def test_read_pair(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"A": [[0, 1], [1, 0]], "Astar": [[1, 0], [0, -1]]}))
    assert type(read_document(path)) is PairDocument


def test_stored_ordering_must_be_standard(kraw2):
    doc = system_to_document(kraw2[0]).model_copy(update={"theta": ["0", "2", "-2"]})
    with pytest.raises(InadmissibleParametersError):
        load_system(doc)


def test_stored_shape_must_agree(kraw2):
    doc = system_to_document(kraw2[0]).model_copy(update={"shape": [1, 2, 1]})
    with pytest.raises(InadmissibleParametersError):
        load_system(doc)
