# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import json
import logging
from functools import lru_cache
from importlib import resources

from epwlab import hooks
from epwlab.exceptions import EpwLabError

_logger = logging.getLogger(__name__)


class FixtureError(EpwLabError):
    """Exception raised when a packaged table is missing or unreadable"""
    pass


@lru_cache(maxsize=None)
def load_fixture(key):
    """
    Load a packaged JSON table registered in hooks.fixtures

    Args:
        key (str): Registry key, e.g. "quadric_cases"

    Returns:
        The decoded JSON document

    Raises:
        FixtureError: If the key is unknown or the file cannot be decoded
    """
    filename = hooks.fixtures.get(key)
    if filename is None:
        raise FixtureError(f"Unknown fixture: {key}")
    try:
        text = resources.files("epwlab.fixtures").joinpath(filename).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        _logger.error(f"Error loading fixture {filename}: {str(e)}", exc_info=True)
        raise FixtureError(f"Cannot load fixture {filename}: {str(e)}")
