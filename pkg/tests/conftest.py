import pytest

from hxbench import datagen, driver
from hxbench.benchspec import emit_ddl, load_catalog


@pytest.fixture
def make_backend(tmp_path):
    """Factory for throwaway embedded backends, closed on teardown."""
    opened = []

    def _make(pool_size=4, name="db", isolation="read-committed"):
        target = driver.embedded_backend(
            str(tmp_path / f"{name}.db"), pool_size=pool_size, isolation=isolation
        )
        backend = driver.connect(target)
        opened.append(backend)
        return backend

    yield _make
    for b in opened:
        b.close()


@pytest.fixture
def populated(make_backend):
    """Factory: embedded backend holding a populated catalog at scale 1."""

    def _make(benchmark="fibenchmark", fk=False, seed=1234, pool_size=4, name=None):
        catalog = load_catalog(benchmark)
        backend = make_backend(pool_size=pool_size, name=name or benchmark)
        backend.run_script(emit_ddl(catalog, fk))
        datagen.populate(catalog, 1, seed, backend)
        return catalog, backend

    return _make
