"""Test the expansion cache."""
import threading

import pytest

from core.cache import ExpansionCache
from core.calculus import expand
from core.catalog import get
from core.dsl import parse_word


def test_cache_set_and_get():
    """Test basic cache set and get operations."""
    cache: ExpansionCache[str, str] = ExpansionCache()

    cache.set("key1", "value1")
    assert cache.get("key1") == "value1"


def test_cache_get_nonexistent_key():
    """Test getting a key that doesn't exist."""
    cache: ExpansionCache[str, str] = ExpansionCache()
    assert cache.get("nonexistent") is None


def test_cache_overwrite():
    cache: ExpansionCache[str, str] = ExpansionCache()
    cache.set("key1", "value1")
    cache.set("key1", "value2")
    assert cache.get("key1") == "value2"
    assert cache.size() == 1


def test_cache_evicts_least_recently_used():
    """Test that capacity bounds the cache and recent reads keep entries alive."""
    cache: ExpansionCache[str, int] = ExpansionCache(capacity=2)
    cache.set("a", 1)
    cache.set("b", 2)
    assert cache.get("a") == 1  # refresh "a"
    cache.set("c", 3)

    assert cache.get("b") is None
    assert cache.get("a") == 1
    assert cache.get("c") == 3
    assert cache.size() == 2


def test_cache_rejects_non_positive_capacity():
    with pytest.raises(ValueError):
        ExpansionCache(capacity=0)


def test_cache_clear():
    """Test clearing all cache entries."""
    cache: ExpansionCache[str, str] = ExpansionCache()
    cache.set("key1", "value1")
    cache.get("key1")
    cache.clear()

    assert cache.size() == 0
    assert cache.stats()["hits"] == 0


def test_cache_stats():
    """Test hit/miss accounting."""
    cache: ExpansionCache[str, str] = ExpansionCache(capacity=10)
    cache.set("key1", "value1")
    cache.get("key1")
    cache.get("missing")

    stats = cache.stats()
    assert stats["size"] == 1
    assert stats["capacity"] == 10
    assert stats["hits"] == 1
    assert stats["misses"] == 1
    assert stats["hit_rate"] == 0.5


def test_cache_thread_safety():
    """Test concurrent writers do not corrupt the cache."""
    cache: ExpansionCache[int, int] = ExpansionCache(capacity=1000)

    def writer(offset: int) -> None:
        for i in range(200):
            cache.set(offset + i, i)
            cache.get(offset + i)

    threads = [threading.Thread(target=writer, args=(n * 1000,)) for n in range(4)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    assert cache.size() == 800


def test_system_cache_is_populated_by_expand():
    """Test that expand stores decompositions and returns them unchanged."""
    system = get("hanoi").system
    word = parse_word("b.c.a.b.a")
    first = expand(system, word)
    assert system.expansion_cache.get(word) == first
    assert expand(system, word) == first
