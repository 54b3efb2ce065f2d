# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from epwlab.config.settings import get_settings


def ordered_map(function, items, threads=None):
    """
    Map a pure function over items, possibly on a thread pool

    Results come back in input order regardless of scheduling.

    Args:
        function (callable): Function of one argument
        items (iterable): Inputs
        threads (int, optional): Worker count; defaults to the configured value

    Returns:
        list: Results in input order
    """
    items = list(items)
    workers = threads if threads is not None else get_settings().threads
    if workers == 1 or len(items) <= 1:
        return [function(item) for item in items]
    workers = workers or get_settings().worker_count
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(function, items))
