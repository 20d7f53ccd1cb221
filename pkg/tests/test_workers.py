from __future__ import annotations

import pytest

from codes.workers import WorkerPool


def _square(value: int) -> int:
    return value * value


def _fail(value: int) -> int:
    raise RuntimeError(f"task {value} failed")


def test_inline_map_keeps_order():
    with WorkerPool(1) as pool:
        assert pool.map(_square, [3, 1, 2]) == [9, 1, 4]


def test_process_map_keeps_order():
    with WorkerPool(2, label="squares") as pool:
        assert pool.map(_square, range(50)) == [v * v for v in range(50)]


def test_worker_errors_reach_the_caller():
    with WorkerPool(2) as pool:
        with pytest.raises(RuntimeError):
            pool.map(_fail, [1, 2, 3])


def test_rejects_zero_jobs():
    with pytest.raises(ValueError):
        WorkerPool(0)
