# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache

from sympy import prevprime

from epwlab.exceptions import EpwLabInputError

_logger = logging.getLogger(__name__)

DEFAULT_SETTINGS = {
    "threads": 0,
    "log_level": "WARNING",
    "entry_bound": 10,
    "prime_count": 3,
    "prime_ceiling": 2**31,
    "search_budget": 100,
    "minors_per_batch": 5,
    "probe_retries": 3,
    "max_enumeration": 1_000_000,
    "record_wall_time": False,
}

# Environment variable -> (setting, converter)
ENV_OVERRIDES = {
    "EPWLAB_THREADS": ("threads", int),
    "EPWLAB_LOG_LEVEL": ("log_level", str),
    "EPWLAB_PROBE_RETRIES": ("probe_retries", int),
    "EPWLAB_MAX_ENUMERATION": ("max_enumeration", int),
    "EPWLAB_SEARCH_BUDGET": ("search_budget", int),
}


class SettingsError(EpwLabInputError):
    """Exception raised for invalid configuration values"""
    pass


@dataclass(frozen=True)
class EpwLabSettings:
    """
    Runtime configuration for epwlab

    This class handles:
    - Defaults for the random generators and the modular accelerator
    - Retry and search budgets for the EPW probes
    - Environment overrides for thread count and logging
    """

    threads: int = DEFAULT_SETTINGS["threads"]
    log_level: str = DEFAULT_SETTINGS["log_level"]
    entry_bound: int = DEFAULT_SETTINGS["entry_bound"]
    prime_count: int = DEFAULT_SETTINGS["prime_count"]
    prime_ceiling: int = DEFAULT_SETTINGS["prime_ceiling"]
    search_budget: int = DEFAULT_SETTINGS["search_budget"]
    minors_per_batch: int = DEFAULT_SETTINGS["minors_per_batch"]
    probe_retries: int = DEFAULT_SETTINGS["probe_retries"]
    max_enumeration: int = DEFAULT_SETTINGS["max_enumeration"]
    record_wall_time: bool = DEFAULT_SETTINGS["record_wall_time"]
    primes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        self.validate()
        if not self.primes:
            object.__setattr__(self, "primes", modular_primes(self.prime_count, self.prime_ceiling))

    def validate(self):
        """Validate settings before use"""
        self.validate_threads()
        self.validate_log_level()
        self.validate_budgets()

    def validate_threads(self):
        if self.threads < 0:
            raise SettingsError(f"threads must be >= 0, got {self.threads}")

    def validate_log_level(self):
        if logging.getLevelName(str(self.log_level).upper()) not in (
            logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR, logging.CRITICAL
        ):
            raise SettingsError(f"Unknown log level: {self.log_level}")

    def validate_budgets(self):
        for name in ("entry_bound", "prime_count", "search_budget", "minors_per_batch", "max_enumeration"):
            if getattr(self, name) < 1:
                raise SettingsError(f"{name} must be positive")
        if self.probe_retries < 0:
            raise SettingsError("probe_retries must be >= 0")

    @property
    def worker_count(self):
        """Number of workers for thread pools; 0 means one per CPU."""
        return self.threads or (os.cpu_count() or 1)

    def with_overrides(self, **overrides):
        """Return a copy with the given (non-None) values replaced."""
        overrides = {key: value for key, value in overrides.items() if value is not None}
        if "prime_count" in overrides or "prime_ceiling" in overrides:
            overrides.setdefault("primes", ())
        return replace(self, **overrides) if overrides else self


@lru_cache(maxsize=None)
def modular_primes(count, ceiling):
    """The `count` largest primes strictly below `ceiling`, descending."""
    primes = []
    current = ceiling
    for _ in range(count):
        current = prevprime(current)
        primes.append(int(current))
    return tuple(primes)


_process_overrides = {}


def _read_environment():
    values = {}
    for variable, (name, convert) in ENV_OVERRIDES.items():
        raw = os.environ.get(variable)
        if raw in (None, ""):
            continue
        try:
            values[name] = convert(raw)
        except ValueError:
            _logger.warning(f"Ignoring invalid value for {variable}: {raw!r}")
    return values


@lru_cache(maxsize=1)
def get_settings():
    """
    Get the active settings

    Defaults are overlaid with environment variables; the result is cached
    until clear_cache() is called.

    Returns:
        EpwLabSettings: The settings object
    """
    overrides = _read_environment()
    if overrides:
        _logger.debug(f"Settings overridden from environment: {sorted(overrides)}")
    overrides.update(_process_overrides)
    return EpwLabSettings(**overrides)


def clear_cache():
    """Clear cached settings"""
    get_settings.cache_clear()


def configure(**overrides):
    """
    Apply process-wide overrides on top of defaults and environment

    None values are ignored; the settings cache is cleared.
    """
    previous = dict(_process_overrides)
    _process_overrides.update({key: value for key, value in overrides.items() if value is not None})
    clear_cache()
    try:
        return get_settings()
    except SettingsError:
        _process_overrides.clear()
        _process_overrides.update(previous)
        clear_cache()
        raise


def reset():
    _process_overrides.clear()
    clear_cache()
