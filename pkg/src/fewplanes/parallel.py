"""Deterministic worker-pool helper.

All parallel passes in the library map a pure function over a list of
argument chunks and merge results in list order, so the output is
identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, args_list, jobs: int = 1) -> list:
    args_list = list(args_list)
    if jobs <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args_list))
