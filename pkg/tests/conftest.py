import pytest

from skeinz.cache import CACHE_ENV


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    # tests never read or write a user cache unless they ask for one
    monkeypatch.delenv(CACHE_ENV, raising=False)
