import hashlib
import logging
import threading
from collections.abc import Callable
from collections.abc import Hashable
from functools import partial
from functools import wraps
from typing import Any

logger = logging.getLogger(__name__)

_MISSING = object()


class InMemoryCache:
    """Simple in-memory cache keyed by any hashable value."""

    def __init__(self, maxsize: int | None = None):
        self.store: dict[Hashable, Any] = {}
        self.maxsize = maxsize
        # to safely handle concurrent access
        self.lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.store)

    def __contains__(self, key: Hashable) -> bool:
        with self.lock:
            return key in self.store

    def get(self, key: Hashable, default: Any = None) -> Any:
        with self.lock:
            return self.store.get(key, default)

    def set(self, key: Hashable, value: Any) -> None:
        with self.lock:
            if self.maxsize is not None and len(self.store) >= self.maxsize:
                # drop the oldest entry, dicts keep insertion order
                self.store.pop(next(iter(self.store)))
            self.store[key] = value

    def delete(self, key: Hashable) -> None:
        with self.lock:
            self.store.pop(key, None)

    def clear(self) -> None:
        with self.lock:
            self.store.clear()


cache = InMemoryCache()


def default_key_builder(func, args, kwargs) -> str:
    """Generate a key using function name, args and kwargs."""
    return hashlib.md5(f"{func.__module__}.{func.__qualname__}:{args}:{kwargs}".encode()).hexdigest()  # noqa: S324


def cached(
    _func=None,
    *,
    namespace: str | None = None,
    key_builder: Callable[..., Hashable] | None = None,
    backend: InMemoryCache | None = None,
):
    """Memoize a pure function in the shared in-memory cache."""

    if not _func:
        return partial(cached, namespace=namespace, key_builder=key_builder, backend=backend)

    @wraps(_func)
    def wrapper(*args, **kwargs):
        store = backend or cache
        if key_builder:
            key = key_builder(_func, args, kwargs)
        else:
            key = default_key_builder(_func, args, kwargs)
        if namespace:
            key = (namespace, key)

        value = store.get(key, _MISSING)
        if value is _MISSING:
            value = _func(*args, **kwargs)
            store.set(key, value)
        return value

    wrapper.cache = lambda: backend or cache
    return wrapper
