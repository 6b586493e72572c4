import pytest

from fqrc.data import (
    DataError,
    Dataset,
    fixed_split,
    leave_one_out,
    load_bundled,
    load_csv,
    load_features,
    load_manifest,
    make_separable,
    write_csv,
)


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


BASIC = """f:open,f:natural,label
0.1,-2.5,coast
0.2,-1.5,forest
0.3,0.5,coast
0.4,1e-3,city
"""


def test_load_shape_and_classes(tmp_path):
    ds = load_csv(write(tmp_path, BASIC))
    assert len(ds) == 4 and ds.n_features == 2
    assert ds.feature_names == ("open", "natural")
    assert ds.class_names == ("city", "coast", "forest")
    assert ds.labels == [1, 2, 1, 0]
    assert ds.references is None


def test_explicit_class_order(tmp_path):
    ds = load_csv(write(tmp_path, BASIC), classes=["forest", "coast", "city"])
    assert ds.labels == [1, 0, 1, 2]
    with pytest.raises(DataError, match="unknown label 'city'"):
        load_csv(write(tmp_path, BASIC), classes=["forest", "coast"])


def test_reference_columns(tmp_path):
    text = "id,f:x,label,ref:a,ref:b\ns1,0.5,a,0.75,0.25\ns2,1.5,b,0,1\n"
    ds = load_csv(write(tmp_path, text))
    assert ds.references[0].r == (0.75, 0.25)
    assert ds.references[1].r == (0.0, 1.0)
    assert ds.ids == ("s1", "s2")


def test_reference_rows_are_normalized(tmp_path):
    ds = load_csv(write(tmp_path, "f:x,label,ref:a,ref:b\n0,a,84.2,15.4\n"))
    assert sum(ds.references[0].r) == pytest.approx(1.0)


def test_non_numeric_names_line(tmp_path):
    text = BASIC.replace("0.3,0.5", "0.3,abc")
    with pytest.raises(DataError, match="line 4"):
        load_csv(write(tmp_path, text))


def test_short_row_names_line(tmp_path):
    with pytest.raises(DataError, match="line 3"):
        load_csv(write(tmp_path, "f:x,label\n1,a\n2\n"))


@pytest.mark.parametrize("header", ["x,label", "f:x", "f:x,f:x,label"])
def test_bad_headers(tmp_path, header):
    with pytest.raises(DataError):
        load_csv(write(tmp_path, header + "\n"))


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_csv(tmp_path / "nope.csv")


def test_round_trip_17_digits(tmp_path):
    text = "id,f:x,f:y,label,ref:a,ref:b\nr1,0.1,-1e-300,a,0.3,0.7\nr2,3.141592653589793,2,b,1,0\n"
    ds = load_csv(write(tmp_path, text))
    out = tmp_path / "out.csv"
    write_csv(ds, out)
    assert load_csv(out) == ds


def test_load_features_ignores_labels(tmp_path):
    ids, names, X = load_features(write(tmp_path, BASIC))
    assert ids == ["1", "2", "3", "4"] and names == ["open", "natural"]
    assert X.shape == (4, 2)


def test_leave_one_out_protocol(tmp_path):
    ds = load_csv(write(tmp_path, BASIC.replace("city", "coast")))
    folds = list(leave_one_out(ds))
    assert len(folds) == 4
    assert sorted(f.index for f in folds) == [0, 1, 2, 3]
    for f in folds:
        assert len(f.train) == 3
        assert f.test == ds.samples[f.index]
        remaining = [i for i in range(4) if i != f.index]
        assert f.train.samples == tuple(ds.samples[i] for i in remaining)
    assert leave_one_out(ds)[-1].index == 3


def test_leave_one_out_needs_two():
    ds = make_separable(n_classes=1, n_extreme=0, n_interior=1)
    with pytest.raises(DataError):
        leave_one_out(ds)


def test_fixed_split(tmp_path):
    ds = load_csv(write(tmp_path, BASIC))
    train, test = fixed_split(ds, {0: "train", 1: "train", 2: "test", 3: "test"})
    assert (len(train), len(test)) == (2, 2)
    with pytest.warns(UserWarning):
        _, test = fixed_split(ds, {i: "train" for i in range(4)})
    assert len(test) == 0
    with pytest.raises(DataError, match="missing row 9"):
        fixed_split(ds, {8: "train"})


def test_manifest_file(tmp_path):
    m = write(tmp_path, "row,split\n1,train\n2,train  # comment\n3,test\n", "m.txt")
    assert load_manifest(m) == {0: "train", 1: "train", 2: "test"}
    dup = write(tmp_path, "1,train\n1,test\n", "dup.txt")
    with pytest.raises(DataError, match="assigned twice"):
        load_manifest(dup)


def test_sixty_forty_manifest(tmp_path):
    ds = make_separable()
    n = len(ds)
    cut = int(0.6 * n)
    train, test = fixed_split(ds, {i: "train" if i < cut else "test" for i in range(n)})
    assert (len(train), len(test)) == (cut, n - cut)


def test_bundled_dataset_matches_generator():
    ds = load_bundled()
    gen = make_separable()
    assert ds.samples == gen.samples
    assert ds.class_names == gen.class_names


def test_dataset_rejects_bad_label():
    gen = make_separable()
    with pytest.raises(DataError):
        Dataset(gen.samples, gen.class_names[:2], gen.feature_names)
