"""Shared fixtures.

Census construction dominates the suite's runtime, so results are cached
per (degree, options) for the whole session and shared across modules.
"""

from __future__ import annotations

import pytest

from hgcensus import build_degree_census


@pytest.fixture(scope="session")
def census():
    """Factory returning a cached DegreeCensus for a degree.

    Keyword options are forwarded to build_degree_census and participate
    in the cache key, so budget-limited variants do not collide with the
    default runs.
    """
    cache = {}

    def get(degree: int, **options):
        key = (degree, tuple(sorted(options.items())))
        if key not in cache:
            cache[key] = build_degree_census(degree, **options)
        return cache[key]

    return get
