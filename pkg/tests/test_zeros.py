import hashlib
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import glab

TWO_PI = 2 * math.pi


def test_parse_verbatim():
    t = glab.parse_zeros("14.134725142\n21.022039639\n")
    assert list(t.gammas) == [14.134725142, 21.022039639]
    assert t.precision_digits == 9


def test_parse_comments_and_blanks():
    text = "# table header\n\n14.134725142\n# middle\n21.022039639\n\n"
    t = glab.parse_zeros(text)
    assert len(t.gammas) == 2


def test_parse_order_error():
    with pytest.raises(glab.OrderError):
        glab.parse_zeros("21.0\n14.1\n", starts_at_first=False)


def test_parse_empty_error():
    with pytest.raises(glab.EmptyTableError):
        glab.parse_zeros("")
    with pytest.raises(glab.EmptyTableError):
        glab.parse_zeros("# only comments\n")


def test_parse_bad_line_reports_number():
    with pytest.raises(glab.ParseError) as err:
        glab.parse_zeros("14.134725142\nbogus\n")
    assert err.value.line == 2


def test_parse_rejects_small_ordinates():
    with pytest.raises(glab.ParseError):
        glab.parse_zeros("13.9\n21.0\n", starts_at_first=False)


def test_parse_first_zero_guard():
    with pytest.raises(glab.OrderError):
        glab.parse_zeros("15.5\n21.0\n")
    t = glab.parse_zeros("15.5\n21.0\n", starts_at_first=False)
    assert len(t.gammas) == 2


def test_roundtrip_bit_identical(builtin):
    again = glab.parse_zeros(glab.serialize_zeros(builtin))
    assert np.array_equal(again.gammas, builtin.gammas)
    assert again.precision_digits == builtin.precision_digits


@given(st.lists(st.integers(15_000_000, 400_000_000), min_size=1, max_size=40, unique=True))
def test_roundtrip_random_tables(scaled):
    text = "".join(f"{v / 1e6:.6f}\n" for v in sorted(scaled))
    table = glab.parse_zeros(text, starts_at_first=False)
    assert glab.serialize_zeros(table) == text
    again = glab.parse_zeros(glab.serialize_zeros(table), starts_at_first=False)
    assert np.array_equal(again.gammas, table.gammas)


def test_builtin_table(builtin):
    assert len(builtin.gammas) == 100
    assert builtin.precision_digits == 12
    assert builtin.gammas[0] == pytest.approx(14.134725, abs=1e-5)
    assert np.all(np.diff(builtin.gammas) > 0)
    assert builtin.height_of_prefix(1) == builtin.gammas[0]
    with pytest.raises(glab.DomainError):
        builtin.height_of_prefix(101)


def test_zero_count_estimate():
    assert glab.zero_count_estimate(100.0) == pytest.approx(29.00, abs=0.01)
    assert glab.zero_count_estimate(TWO_PI * math.e) == pytest.approx(7 / 8, abs=1e-12)
    with pytest.raises(glab.DomainError):
        glab.zero_count_estimate(14.0)


def test_validate_builtin(builtin):
    report = glab.validate_zeros(builtin)
    assert report.passed and not report.small_t
    assert report.count == 100
    assert report.estimate == pytest.approx(100, abs=2)


def test_validate_single_zero_vacuous():
    t = glab.parse_zeros("14.134725\n")
    report = glab.validate_zeros(t)
    assert report.passed and report.small_t


def test_validate_deviation_scale(builtin):
    # The count-vs-estimate tolerance 1 + 0.05*estimate flags bulk damage;
    # a single missing ordinate stays inside it.
    one_gone = glab.ZeroTable(
        np.delete(builtin.gammas, 50), builtin.source, builtin.precision_digits
    )
    assert glab.validate_zeros(one_gone).passed
    decimated = glab.ZeroTable(
        np.concatenate([builtin.gammas[:10], builtin.gammas[90:]]),
        builtin.source,
        builtin.precision_digits,
    )
    assert not glab.validate_zeros(decimated).passed


def test_tail_bound_values():
    assert glab.tail_bound(100.0, 10.0) == pytest.approx(1.5168392, abs=1e-6)
    assert glab.tail_bound(100.0, 0.0) == 0.0
    with pytest.raises(glab.DomainError):
        glab.tail_bound(6.0, 10.0)
    with pytest.raises(glab.DomainError):
        glab.tail_bound(100.0, -1.0)


@given(st.floats(TWO_PI * math.e, 1e7), st.floats(1.0, 1e6))
def test_tail_bound_monotone_in_height(t, x):
    assert glab.tail_bound(2 * t, x) < glab.tail_bound(t, x)


def _write_table(path, table):
    path.write_text(glab.serialize_zeros(table))


def test_fetch_cold_and_warm(tmp_path, builtin):
    src = tmp_path / "src.txt"
    _write_table(src, builtin)
    cache = tmp_path / "cache"
    url = src.as_uri()
    t1 = glab.fetch_zeros(url, cache)
    assert len(t1.gammas) == 100
    src.unlink()  # warm cache must not need the origin
    t2 = glab.fetch_zeros(url, cache)
    assert np.array_equal(t1.gammas, t2.gammas)


def test_fetch_offline_cold(tmp_path):
    with pytest.raises(glab.FetchError):
        glab.fetch_zeros("file:///nonexistent-zeros.txt", tmp_path / "c", allow_network=False)


def test_fetch_transport_failure(tmp_path):
    with pytest.raises(glab.FetchError):
        glab.fetch_zeros((tmp_path / "missing.txt").as_uri(), tmp_path / "c")


def test_fetch_integrity_error(tmp_path, builtin):
    src = tmp_path / "src.txt"
    _write_table(src, builtin)
    cache = tmp_path / "cache"
    url = src.as_uri()
    glab.fetch_zeros(url, cache)
    cached = next(cache.glob("zeros-*.txt"))
    cached.write_text("14.2\n15.2\n")
    with pytest.raises(glab.IntegrityError):
        glab.fetch_zeros(url, cache)


def test_fetch_metadata_fields(tmp_path, builtin):
    src = tmp_path / "src.txt"
    _write_table(src, builtin)
    cache = tmp_path / "cache"
    url = src.as_uri()
    glab.fetch_zeros(url, cache)
    meta = json.loads(next(cache.glob("zeros-*.json")).read_text())
    assert meta["url"] == url
    assert meta["sha256"] == hashlib.sha256(src.read_bytes()).hexdigest()
    assert set(meta) == {"url", "sha256", "fetched_at"}
