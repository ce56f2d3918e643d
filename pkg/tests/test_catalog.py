import json

import pytest

from edfkit.core.digest import canonical_json, digest_payload, verify_digest
from edfkit.core.errors import CatalogCorrupt, InvalidInput, PreconditionUnmet
from edfkit.services.catalog import CatalogStore, get_catalog_store, require_clean


@pytest.fixture
def store(tmp_path):
    return CatalogStore(str(tmp_path / "catalog"))


def test_digest_is_order_insensitive_for_keys():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    digest = digest_payload({"a": 1, "b": 2})
    assert verify_digest({"b": 2, "a": 1}, digest)
    assert not verify_digest({"a": 1, "b": 3}, digest)


def test_add_list_and_show(store, z10_amd, z10_swedf):
    entry = store.add("z10", z10_amd, metadata={"source": "test"})
    assert entry.lam == 4
    assert entry.kind == "bswedf"
    store.add("z10-swedf", z10_swedf, kind="swedf")
    assert [e.name for e in store.list_entries()] == ["z10", "z10-swedf"]
    assert store.get("z10") == z10_amd
    index = json.loads(store.index_path.read_text())
    assert index["entries"]["z10"]["lambda"] == 4


def test_digest_ignores_translation(store, z10_amd):
    first = store.add("a", z10_amd)
    second = store.add("b", z10_amd.translate(3))
    assert first.digest == second.digest


def test_add_refuses_failing_kind(store, z10_amd):
    with pytest.raises(PreconditionUnmet):
        store.add("z10", z10_amd, kind="swedf")


def test_add_refuses_duplicates_and_bad_names(store, z10_amd):
    store.add("z10", z10_amd)
    with pytest.raises(InvalidInput):
        store.add("z10", z10_amd)
    store.add("z10", z10_amd, replace=True)
    with pytest.raises(InvalidInput):
        store.add("../escape", z10_amd)
    with pytest.raises(InvalidInput):
        store.add("index", z10_amd)
    with pytest.raises(InvalidInput):
        store.add("z10-bedf", z10_amd, kind="bedf")


def test_verify_all_detects_tampering(store, z10_amd, z10_swedf):
    store.add("z10", z10_amd)
    store.add("z10-swedf", z10_swedf, kind="swedf")
    assert all(s.ok for s in store.verify_all())

    path = store.directory / "z10.json"
    document = json.loads(path.read_text())
    document["blocks"] = [[5], [3], [0, 4, 6]]
    path.write_text(json.dumps(document))

    statuses = {s.name: s for s in store.verify_all()}
    assert not statuses["z10"].ok
    assert statuses["z10-swedf"].ok
    with pytest.raises(CatalogCorrupt) as e:
        require_clean(list(statuses.values()))
    assert e.value.context["entries"] == ["z10"]
    with pytest.raises(CatalogCorrupt):
        store.get("z10")


def test_unreadable_document_is_corruption(store, z10_amd):
    store.add("z10", z10_amd)
    (store.directory / "z10.json").write_text("{")
    assert not store.verify_all()[0].ok


def test_unknown_entry(store):
    with pytest.raises(InvalidInput):
        store.get("missing")


def test_store_follows_settings(tmp_path):
    assert get_catalog_store().directory == tmp_path / "catalog"
