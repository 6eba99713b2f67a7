from .fibenchmark import build_fibenchmark
from .stitched import build_stitched_fixture
from .subenchmark import build_subenchmark
from .tabenchmark import build_tabenchmark

__all__ = [
    "build_subenchmark",
    "build_fibenchmark",
    "build_tabenchmark",
    "build_stitched_fixture",
]
