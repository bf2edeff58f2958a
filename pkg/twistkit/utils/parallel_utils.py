import logging
from multiprocessing import Pool
from typing import Any, Callable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

Task = Tuple[Callable, tuple]


def _call(task: Task) -> Any:
    fn, args = task
    return fn(*args)


def run_in_parallel(tasks: Sequence[Task], num_workers: int = 1) -> List[Any]:
    """Run independent (function, args) tasks and return results in task order.

    :param tasks:       List of (callable, argument tuple); both must pickle
                        when num_workers > 1.
    :param num_workers: Size of the process pool; <= 1 runs in-process.
    """
    tasks = list(tasks)
    if num_workers <= 1 or len(tasks) <= 1:
        return [_call(task) for task in tasks]
    workers = min(num_workers, len(tasks))
    logger.debug(f"Submitting {len(tasks)} tasks to {workers} workers")
    with Pool(processes=workers) as pool:
        return pool.map(_call, tasks)
