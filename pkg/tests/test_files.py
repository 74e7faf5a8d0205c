import pytest

from braidkit import catalog, files
from braidkit.ncalg import NCPoly


def shipped():
    for kind, entries in files.shipped_files().items():
        for name, path in entries.items():
            yield kind, name, path


SHIPPED = list(shipped())


def test_every_compiled_object_is_shipped():
    have = {(k, n) for k, n, _ in SHIPPED}
    for kind in files.KINDS:
        for name in files.builtin_names(kind):
            assert (kind, name) in have


@pytest.mark.parametrize("kind, name, path", SHIPPED, ids=[f"{k}:{n}" for k, n, _ in SHIPPED])
def test_round_trip_is_byte_exact(kind, name, path):
    text = path.read_text(encoding="utf-8")
    doc = files.load_doc(text)
    assert doc["kind"] == kind
    assert files.dump_doc(doc) == text


@pytest.mark.parametrize("kind, name, path", SHIPPED, ids=[f"{k}:{n}" for k, n, _ in SHIPPED])
def test_file_matches_compiled(kind, name, path):
    doc = files.load_file(path)
    built = files.build(doc)
    if kind == "presentation":
        ref = files.resolve(kind, name)
        assert [str(r) for r in built.rules] == [str(r) for r in ref.rules]
    elif kind == "structure":
        ref = catalog.structure(name)
        for g in ref.base.generators:
            assert built.delta_word((g,)) == ref.delta_word((g,))
            assert built.antipode_word((g,)) == ref.antipode_word((g,))
        if ref.braided:
            for x in ref.base.generators:
                for y in ref.base.generators:
                    assert built.psi_words((x,), (y,)) == ref.psi_words((x,), (y,))
    elif kind == "coaction":
        ref = catalog.coaction(name)
        assert dict(built.table) == dict(ref.table)
    else:
        ref = catalog.product_table(name)
        assert dict(built.table) == dict(ref.table)


def test_yaml_path_resolves(tmp_path):
    src = files.shipped_files()["presentation"]["AR"]
    dst = tmp_path / "mine.yaml"
    dst.write_text(src.read_text())
    P = files.resolve("presentation", str(dst))
    assert P.normal_form(NCPoly.word(("b", "a"))) == files.resolve("presentation", "AR").normal_form(NCPoly.word(("b", "a")))
    assert files.kind_of(str(dst)) == "presentation"


@pytest.mark.parametrize(
    "text",
    [
        "just text",
        "format_version: 2\nkind: presentation\nname: X\ngenerators: []\nrelations: []\n",
        "format_version: 1\nkind: monoid\nname: X\n",
        "format_version: 1\nkind: presentation\nname: X\n",
        "format_version: 1\nkind: presentation\nname: X\ngenerators: []\nrelations: []\ncolour: red\n",
    ],
)
def test_bad_documents(text):
    with pytest.raises(files.FormatError):
        files.load_doc(text)


def test_kind_mismatch(tmp_path):
    dst = tmp_path / "s.yaml"
    dst.write_text(files.shipped_files()["structure"]["ar_hopf"].read_text())
    with pytest.raises(files.FormatError):
        files.resolve("presentation", str(dst))


def test_unknown_names():
    with pytest.raises(KeyError):
        files.resolve("structure", "no_such_thing")
    with pytest.raises(KeyError):
        files.kind_of("no_such_thing")


def test_kind_of():
    assert files.kind_of("ar") == "presentation"
    assert files.kind_of("TQR|r=q") == "presentation"
    assert files.kind_of("br_sol2_abcd") == "structure"
    assert files.kind_of("adjoint_tqr") == "coaction"
    assert files.kind_of("transmute_eq12") == "table"


def test_write_shipped_reproduces_package_data(tmp_path):
    for path in files.write_shipped(tmp_path):
        rel = path.relative_to(tmp_path)
        assert path.read_text() == (files.data_dir() / rel).read_text()
