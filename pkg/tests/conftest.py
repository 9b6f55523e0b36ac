from __future__ import annotations

from functools import lru_cache

import pytest

from monoidgrowth.catalog import catalog_presentation
from monoidgrowth.words import ElementStore, build_store


@lru_cache(maxsize=None)
def cached_store(name: str, horizon: int) -> ElementStore:
    return build_store(catalog_presentation(name), horizon)


@pytest.fixture
def a2_store() -> ElementStore:
    return cached_store("A2", 8)


@pytest.fixture
def b2_store() -> ElementStore:
    return cached_store("B2", 8)


@pytest.fixture
def free2_store() -> ElementStore:
    return cached_store("Free:2", 6)


@pytest.fixture
def fg2_store() -> ElementStore:
    return cached_store("FreeGroup:2", 5)
