# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import hashlib
import random

from epwlab.config.settings import get_settings


def derive_seed(seed, label):
    """
    Derive a sub-seed from a run seed and a task label

    Args:
        seed (int): The run seed
        label (str): Name of the sub-task

    Returns:
        int: A 64-bit seed that depends only on (seed, label)
    """
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def make_rng(seed, label=None):
    """Seeded generator, optionally derived through a label."""
    return random.Random(derive_seed(seed, label) if label is not None else seed)


def spawn(rng, label):
    """Child generator for a sub-task, drawn from a parent generator."""
    return make_rng(rng.getrandbits(64), label)


def random_int(rng, bound=None):
    bound = bound or get_settings().entry_bound
    return rng.randint(-bound, bound)


def random_int_vector(rng, n, bound=None, nonzero=False):
    """Integer vector with entries uniform in [-bound, bound]."""
    while True:
        vector = [random_int(rng, bound) for _ in range(n)]
        if not nonzero or any(vector):
            return vector


def random_int_matrix(rng, rows, cols, bound=None):
    return [random_int_vector(rng, cols, bound) for _ in range(rows)]
