import pytest
import sys
import os
import json

# Add src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import cache as cache_module
from cache import JsonFileCache, RedisGeneratorCache, is_valid_generator, open_cache
from exceptions import DataError
from services import ConicService


class FakeRedis:
    """In-memory stand-in for the few redis.Redis calls the cache makes."""

    def __init__(self, reachable=True):
        self.reachable = reachable
        self.store = {}
        self.ttls = {}

    def ping(self):
        if not self.reachable:
            raise ConnectionError("connection refused")
        return True

    def get(self, key):
        return self.store.get(key)

    def setex(self, key, ttl, value):
        self.store[key] = value
        self.ttls[key] = ttl

    def delete(self, key):
        self.store.pop(key, None)


@pytest.fixture
def fake_redis(monkeypatch):
    """Route redis.Redis.from_url to an in-memory fake."""
    fake = FakeRedis()
    monkeypatch.setattr(cache_module.redis.Redis, "from_url", lambda *args, **kwargs: fake)
    return fake


class TestValidation:
    """Test revalidation of cached generators."""

    def test_valid_generators(self):
        """Test genuine generators pass."""
        assert is_valid_generator(105, 11, 4, 1)
        assert is_valid_generator(105, 19, 16, 1)
        assert is_valid_generator(1, 5, 3, 4)

    def test_invalid_generators(self):
        """Test wrong pairs, primes and orderings fail."""
        assert not is_valid_generator(105, 11, 4, 2)
        assert not is_valid_generator(105, 5, 4, 1)
        assert not is_valid_generator(105, 15, 4, 1)
        assert not is_valid_generator(1, 5, 4, 3)
        assert not is_valid_generator(1, 5, -3, 4)

    def test_beyond_primality_range(self):
        """Test an on-conic pair with p past the exact primality range is invalid, not an error."""
        m = 10 ** 13
        assert not is_valid_generator(1, m * m + 1, 2 * m, m * m - 1)
        assert not is_valid_generator(105, 10 ** 30 + 57, 1, 1)


class TestJsonFileCache:
    """Test the JSON document backend."""

    def test_missing_file_starts_empty(self, tmp_path):
        """Test a missing file is an empty cache."""
        store = JsonFileCache(tmp_path / "zeta.json")
        assert store.get(105, 11) is None
        store.flush()
        assert not (tmp_path / "zeta.json").exists()

    def test_round_trip(self, tmp_path):
        """Test entries written by flush are read back."""
        path = tmp_path / "zeta.json"
        store = JsonFileCache(path)
        store.put(105, 13, 8, 1)
        store.put(105, 11, 4, 1)
        store.flush()

        document = json.loads(path.read_text())
        assert document == {"entries": [
            {"D": 105, "p": 11, "a": 4, "b": 1},
            {"D": 105, "p": 13, "a": 8, "b": 1},
        ]}
        assert JsonFileCache(path).get(105, 11) == (4, 1)

    def test_invalid_entries_dropped(self, tmp_path):
        """Test entries failing revalidation are dropped and the file rewritten."""
        path = tmp_path / "zeta.json"
        path.write_text(json.dumps({"entries": [
            {"D": 105, "p": 11, "a": 4, "b": 1},
            {"D": 105, "p": 13, "a": 9, "b": 1},
        ]}))
        store = JsonFileCache(path)
        assert store.get(105, 11) == (4, 1)
        assert store.get(105, 13) is None
        store.flush()
        assert len(json.loads(path.read_text())["entries"]) == 1

    def test_huge_prime_entry_dropped(self, tmp_path):
        """Test an entry with an enormous p is dropped instead of aborting the load."""
        m = 10 ** 13
        path = tmp_path / "zeta.json"
        path.write_text(json.dumps({"entries": [
            {"D": 1, "p": m * m + 1, "a": 2 * m, "b": m * m - 1},
            {"D": 105, "p": 11, "a": 4, "b": 1},
        ]}))
        store = JsonFileCache(path)
        assert store.get(1, m * m + 1) is None
        assert store.get(105, 11) == (4, 1)

    def test_unwritable_path(self, tmp_path):
        """Test a failed write is logged and leaves the cache usable."""
        store = JsonFileCache(tmp_path / "missing" / "zeta.json")
        store.put(105, 11, 4, 1)
        store.flush()
        assert not (tmp_path / "missing").exists()
        assert store.get(105, 11) == (4, 1)

    def test_unparseable_document(self, tmp_path):
        """Test a corrupt document is a data error."""
        path = tmp_path / "zeta.json"
        path.write_text("{not json")
        with pytest.raises(DataError):
            JsonFileCache(path)

    def test_service_writes_through(self, tmp_path):
        """Test generators computed by the service land in the cache."""
        path = tmp_path / "zeta.json"
        service = ConicService(cache=JsonFileCache(path))
        service.solve(105, 2717)
        service.flush()
        entries = json.loads(path.read_text())["entries"]
        assert [(e["p"], e["a"], e["b"]) for e in entries] == [(11, 4, 1), (13, 8, 1), (19, 16, 1)]


class TestRedisGeneratorCache:
    """Test the Redis backend."""

    def test_put_and_get(self, fake_redis):
        """Test values are stored under zeta:D:p with a TTL."""
        store = RedisGeneratorCache("redis://localhost:6379/0")
        store.put(105, 11, 4, 1)
        assert json.loads(fake_redis.store["zeta:105:11"]) == {"a": 4, "b": 1}
        assert fake_redis.ttls["zeta:105:11"] > 0
        assert store.get(105, 11) == (4, 1)
        assert store.get(105, 13) is None

    def test_invalid_value_invalidated(self, fake_redis):
        """Test a cached pair failing revalidation is deleted."""
        fake_redis.store["zeta:105:11"] = json.dumps({"a": 5, "b": 1})
        store = RedisGeneratorCache("redis://localhost:6379/0")
        assert store.get(105, 11) is None
        assert "zeta:105:11" not in fake_redis.store

    def test_garbage_value(self, fake_redis):
        """Test an undecodable value is a miss."""
        fake_redis.store["zeta:105:11"] = "garbage"
        store = RedisGeneratorCache("redis://localhost:6379/0")
        assert store.get(105, 11) is None

    def test_unreachable_redis(self, monkeypatch):
        """Test an unreachable server degrades to no cache."""
        fake = FakeRedis(reachable=False)
        monkeypatch.setattr(cache_module.redis.Redis, "from_url", lambda *args, **kwargs: fake)
        store = RedisGeneratorCache("redis://localhost:6379/0")
        assert store.redis_client is None
        assert store.get(105, 11) is None
        store.put(105, 11, 4, 1)
        assert fake.store == {}

    def test_service_reads_cache(self, fake_redis):
        """Test the service prefers a cached generator."""
        service = ConicService(cache=RedisGeneratorCache("redis://localhost:6379/0"))
        assert service.generator(105, 11).element.a == 4
        assert "zeta:105:11" in fake_redis.store
        assert service.generator(105, 11).element.b == 1


class TestOpenCache:
    """Test backend selection."""

    def test_no_location(self):
        """Test no location means no cache."""
        assert open_cache(None) is None

    def test_path(self, tmp_path):
        """Test a path selects the JSON backend."""
        assert isinstance(open_cache(str(tmp_path / "zeta.json")), JsonFileCache)

    def test_redis_url(self, fake_redis):
        """Test a redis:// URL selects the Redis backend."""
        assert isinstance(open_cache("redis://localhost:6379/0"), RedisGeneratorCache)
