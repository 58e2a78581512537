import concurrent.futures


class ThreadPool:
    """
    Creates a class which has a thread pool.
    """

    def __init__(self, max_workers):
        self.thread_pool = concurrent.futures.ThreadPoolExecutor(
            max_workers=max_workers
        )

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.thread_pool.shutdown(wait=True)


def ordered_map(function, items, threads=1):
    """
    Applies a function to every item, on a thread pool when threads > 1. Results come back in the order of
    the items regardless of the schedule.

    Parameters
    ----------
    function : callable
        The function to apply
    items : iterable
        The inputs
    threads : int
        The number of worker threads

    Returns
    -------
    list
        function(item) for each item, in input order
    """

    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]

    with ThreadPool(min(threads, len(items))) as pool:
        return list(pool.thread_pool.map(function, items))
