"""Cache file format: roundtrips, append-only behaviour, validation."""

from fractions import Fraction

import pytest

from wprec.cache import (
    CACHE_HEADER,
    check_cache,
    default_cache_path,
    load_cache,
    save_new_records,
    seed_engine,
)
from wprec.correlator import CorrelatorEngine, CorrelatorKey


def _key(text):
    return CorrelatorKey.from_text(text)


def test_roundtrip(tmp_path):
    path = tmp_path / "values.cache"
    records = {
        _key("1||1"): Fraction(1, 24),
        _key("2||3,2"): Fraction(29, 5760),
        _key("0|1:1|0,0,0,0"): Fraction(1),
    }
    assert save_new_records(path, records) == 3
    assert load_cache(path) == records
    lines = path.read_text().split("\n")
    assert lines[0] == CACHE_HEADER
    assert lines[1] == "0|1:1|0,0,0,0\t1/1"


def test_append_only_and_byte_identical_resave(tmp_path):
    path = tmp_path / "values.cache"
    save_new_records(path, {_key("1||1"): Fraction(1, 24)})
    first = path.read_bytes()
    # Saving the same records again writes nothing.
    assert save_new_records(path, {_key("1||1"): Fraction(1, 24)}) == 0
    assert path.read_bytes() == first
    # New keys append after the existing ones.
    assert save_new_records(path, {_key("2||4"): Fraction(1, 1152)}) == 1
    assert path.read_bytes().startswith(first)


def test_conflicting_save_rejected(tmp_path):
    path = tmp_path / "values.cache"
    save_new_records(path, {_key("1||1"): Fraction(1, 24)})
    with pytest.raises(ValueError, match="disagrees"):
        save_new_records(path, {_key("1||1"): Fraction(1, 25)})


def test_load_validation(tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text("wrong header\n")
    with pytest.raises(ValueError, match=r"bad\.cache:1"):
        load_cache(path)
    path.write_text(f"{CACHE_HEADER}\n1||1 1/24\n")
    with pytest.raises(ValueError, match=r"bad\.cache:2"):
        load_cache(path)
    path.write_text(f"{CACHE_HEADER}\n1||1\tnot-a-number\n")
    with pytest.raises(ValueError, match=r"bad\.cache:2"):
        load_cache(path)
    path.write_text(f"{CACHE_HEADER}\nno pipes\t1/2\n")
    with pytest.raises(ValueError, match=r"bad\.cache:2"):
        load_cache(path)
    path.write_text(f"{CACHE_HEADER}\n1||1\t1/0\n")
    with pytest.raises(ValueError, match=r"bad\.cache:2"):
        load_cache(path)
    path.write_text(f"{CACHE_HEADER}\n1||1\t1/24\n1||1\t1/25\n")
    with pytest.raises(ValueError, match="conflicting"):
        load_cache(path)
    # A duplicate with the same value is tolerated.
    path.write_text(f"{CACHE_HEADER}\n1||1\t1/24\n1||1\t1/24\n")
    assert load_cache(path) == {_key("1||1"): Fraction(1, 24)}


def test_seed_engine_short_circuits_computation(tmp_path):
    engine = CorrelatorEngine()
    planted = {_key("2||3,2"): Fraction(7)}
    seed_engine(engine, planted)
    # The planted (wrong) value is served from the memo, proving the seed
    # is honoured; a fresh engine computes the true one.
    assert engine.correlator(2, psi=(3, 2)) == 7
    assert CorrelatorEngine().correlator(2, psi=(3, 2)) == Fraction(29, 5760)


def test_check_cache_detects_corruption(tmp_path):
    path = tmp_path / "values.cache"
    engine = CorrelatorEngine()
    engine.correlator(2, psi=(3, 2))
    save_new_records(path, engine.memo)
    ok, count, detail = check_cache(path)
    assert ok and detail is None
    assert count == len(engine.memo)
    # Flip one digit of a stored value.
    lines = path.read_text().split("\n")
    lines[1] = lines[1].rsplit("\t", 1)[0] + "\t9/7"
    path.write_text("\n".join(lines))
    ok, count, detail = check_cache(path)
    assert not ok
    assert "9/7" in detail


def test_default_cache_path(monkeypatch):
    monkeypatch.delenv("WPREC_CACHE", raising=False)
    assert default_cache_path() is None
    monkeypatch.setenv("WPREC_CACHE", "/tmp/somewhere.cache")
    assert default_cache_path() == "/tmp/somewhere.cache"
    monkeypatch.setenv("WPREC_CACHE", "")
    assert default_cache_path() is None
