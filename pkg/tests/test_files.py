import pytest
from hypothesis import given, settings, strategies as st

from relalg import files
from relalg.core import AtomStructure, build_algebra
from relalg.families import build_e23, e23_subalgebra, split_algebra, SplitSpec


def roundtrip(text):
    return files.serialize_algebra(
        (af := files.parse_algebra(text)).algebra,
        name=af.name,
        multiplicity=af.multiplicity,
        blocks=af.blocks,
        meta=af.meta,
    )


def test_roundtrip_e23():
    for q in (4, 5, 7):
        text = files.serialize_algebra(build_e23(q), name=f"e23-{q}")
        assert roundtrip(text) == text
        assert files.parse_algebra(text).algebra.table == build_e23(q).table


def test_roundtrip_with_blocks_and_meta():
    sub = e23_subalgebra(7, 0, 3)
    text = files.serialize_algebra(
        sub.parent,
        name="with-extras",
        multiplicity={"e1": 2, "e4": 3},
        blocks=sub.blocks,
        meta={"n": "2", "kind": "bn"},
    )
    assert roundtrip(text) == text
    af = files.parse_algebra(text)
    assert af.multiplicity == {"e1": 2, "e4": 3}
    assert set(af.blocks) == set(sub.blocks)
    assert af.meta == {"n": "2", "kind": "bn"}


def test_roundtrip_nonsymmetric():
    atoms = ("e", "a", "a'")
    conv = {"e": "e", "a": "a'", "a'": "a"}
    reps = {("e", "e", "e"), ("e", "a", "a"), ("a", "a", "a'")}
    alg = build_algebra(AtomStructure.build(atoms, {"e"}, reps, conv))
    text = files.serialize_algebra(alg, name="directed")
    assert "symmetric false" in text
    assert roundtrip(text) == text
    assert files.parse_algebra(text).algebra.structure.converse == conv


def test_roundtrip_split_output():
    res = split_algebra(SplitSpec(build_e23(4), {"e1": 3}))
    text = files.serialize_algebra(res.algebra, name="split")
    assert roundtrip(text) == text


def test_parse_errors():
    with pytest.raises(files.FormatError):
        files.parse_algebra("atoms a b\ncycles\n")  # missing identity
    with pytest.raises(files.FormatError):
        files.parse_algebra(
            "atoms a\nidentity a\nsymmetric maybe\ncycles\n"
        )
    with pytest.raises(files.FormatError):
        files.parse_algebra(
            "atoms a\nidentity a\nsymmetric true\ncycles\na a\n"
        )
    with pytest.raises(files.FormatError):
        files.parse_algebra(
            "wat a\natoms a\nidentity a\nsymmetric true\ncycles\n"
        )


def test_comments_and_blank_lines_ignored():
    text = files.serialize_algebra(build_e23(4))
    noisy = "# header\n\n" + text.replace("symmetric true", "symmetric true  # flag")
    assert files.parse_algebra(noisy).algebra.table == build_e23(4).table


def test_labeling_roundtrip():
    from relalg.represent import cyclic_group_labeling

    lab, _ = cyclic_group_labeling(
        5, {"u": frozenset({1, 4}), "v": frozenset({2, 3})}
    )
    text = files.serialize_labeling(lab.n, lab.label)
    n, label = files.parse_labeling(text)
    assert n == lab.n and label == lab.label
    assert files.serialize_labeling(n, label) == text


def test_labeling_parse_errors():
    with pytest.raises(files.FormatError):
        files.parse_labeling("")
    with pytest.raises(files.FormatError):
        files.parse_labeling("2\na b\n")
    with pytest.raises(files.FormatError):
        files.parse_labeling("1\na b\n")


def test_partition_roundtrip():
    classes = {
        "e1": frozenset({1, 5, 8, 12}),
        "e2": frozenset({2, 3, 10, 11}),
        "e3": frozenset({4, 6, 7, 9}),
    }
    text = files.serialize_partition(classes)
    assert files.parse_partition(text) == classes
    with pytest.raises(files.FormatError):
        files.parse_partition("no separator here\n")
    with pytest.raises(files.FormatError):
        files.parse_partition("u: 1 two 3\n")
    with pytest.raises(files.FormatError):
        files.parse_partition("\n")


@given(q=st.integers(min_value=4, max_value=7))
@settings(max_examples=4, deadline=None)
def test_roundtrip_is_fixed_point(q):
    text = files.serialize_algebra(build_e23(q))
    assert roundtrip(roundtrip(text)) == roundtrip(text) == text
