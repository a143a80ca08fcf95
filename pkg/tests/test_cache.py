import pytest
from hypothesis import given, settings, strategies as st

from wpexact.cache import (
    HEADER,
    CacheConflictError,
    CacheDimensionError,
    CacheDuplicateError,
    CacheFormatError,
    CacheVersionError,
    load,
    merge_files,
    merge_tables,
    save,
)
from wpexact.intersect import MemoTable, TauSpec, fill_layer, tau
from wpexact.rationals import Rat


def small_table():
    return fill_layer(1, 4, MemoTable())


def test_round_trip_byte_identity(tmp_path):
    table = small_table()
    p1 = tmp_path / "a.wpmemo"
    p2 = tmp_path / "b.wpmemo"
    save(table, p1)
    save(load(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_empty_table_is_header_only(tmp_path):
    path = tmp_path / "empty.wpmemo"
    save(MemoTable(), path)
    assert path.read_text() == HEADER + "\n"
    assert load(path).entry_count == 0


def test_record_format(tmp_path):
    table = MemoTable()
    tau(TauSpec.of(0, (0, 0, 0)), table)
    path = tmp_path / "one.wpmemo"
    save(table, path)
    assert path.read_text() == HEADER + "\n0;0,0,0;1\n"


def test_load_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.wpmemo"
    path.write_text("WPMEMO 2 kappa-normalization\n")
    with pytest.raises(CacheVersionError):
        load(path)
    path.write_text("")
    with pytest.raises(CacheVersionError):
        load(path)


def test_load_rejects_malformed_rational(tmp_path):
    path = tmp_path / "bad.wpmemo"
    path.write_text(HEADER + "\n0;0,0,0;1/0\n")
    with pytest.raises(CacheFormatError, match=":2"):
        load(path)
    path.write_text(HEADER + "\nnot a record\n")
    with pytest.raises(CacheFormatError, match=":2"):
        load(path)


def test_load_rejects_dimension_violation(tmp_path):
    path = tmp_path / "bad.wpmemo"
    path.write_text(HEADER + "\n1;2;1/24\n")
    with pytest.raises(CacheDimensionError):
        load(path)


def test_load_rejects_duplicates(tmp_path):
    path = tmp_path / "dup.wpmemo"
    path.write_text(HEADER + "\n1;1;1/24\n1;1;1/24\n")
    with pytest.raises(CacheDuplicateError):
        load(path)


def test_trust_flag_rederives(tmp_path):
    table = small_table()
    path = tmp_path / "t.wpmemo"
    save(table, path)
    load(path, verify_sample=5, seed=7)  # all values re-derive
    # corrupt one value: same key, wrong rational
    lines = path.read_text().splitlines()
    g, d, _ = lines[1].split(";")
    lines[1] = f"{g};{d};999/7"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheConflictError):
        load(path, verify_sample=len(lines), seed=7)


def test_merge_identity_and_idempotence(tmp_path):
    table = small_table()
    empty = MemoTable()
    assert dict(merge_tables(table, empty).items()) == dict(table.items())
    assert dict(merge_tables(table, table).items()) == dict(table.items())


def test_merge_disjoint_union_sorted(tmp_path):
    a = MemoTable()
    tau(TauSpec.of(0, (0, 0, 0)), a)
    b = MemoTable()
    tau(TauSpec.of(1, (1,)), b)
    pa, pb, pout = (tmp_path / n for n in ("a", "b", "out"))
    save(a, pa)
    save(b, pb)
    merge_files(pa, pb, pout)
    merged = load(pout)
    assert set(merged.keys()) == {(0, (0, 0, 0)), (1, (1,))}
    # genus-0 record sorts first
    assert pout.read_text().splitlines()[1].startswith("0;")


def test_merge_conflict_errors():
    a = MemoTable()
    a.put((1, (1,)), Rat(1, 24))
    b = MemoTable()
    b.put((1, (1,)), Rat(1, 23))
    with pytest.raises(CacheConflictError):
        merge_tables(a, b)


@st.composite
def synthetic_tables(draw):
    pool = [
        ((0, (0, 0, 0)), Rat(1)),
        ((0, (1, 0, 0, 0)), Rat(1)),
        ((1, (1,)), Rat(1, 24)),
        ((1, (2, 0)), Rat(1, 24)),
        ((1, (1, 1)), Rat(1, 24)),
        ((2, (4,)), Rat(1, 1152)),
    ]
    table = MemoTable()
    for key, value in draw(st.lists(st.sampled_from(pool), unique_by=lambda kv: kv[0])):
        table.put(key, value)
    return table


@settings(max_examples=40)
@given(synthetic_tables(), synthetic_tables(), synthetic_tables())
def test_merge_commutative_associative(a, b, c):
    ab = merge_tables(a, b)
    ba = merge_tables(b, a)
    assert dict(ab.items()) == dict(ba.items())
    assert dict(merge_tables(ab, c).items()) == dict(
        merge_tables(a, merge_tables(b, c)).items()
    )
