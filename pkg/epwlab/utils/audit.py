# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass, field

from epwlab import __version__
from epwlab.config.settings import get_settings
from epwlab.utils.serialization import dumps, to_jsonable

_logger = logging.getLogger(__name__)


@dataclass
class RunManifest:
    command: str
    seed: int
    inputs: dict = field(default_factory=dict)
    version: str = __version__
    payload: object = None
    wall_time: float | None = None

    def as_dict(self):
        manifest = {
            "command": self.command,
            "seed": self.seed,
            "inputs": dict(sorted(self.inputs.items())),
            "version": self.version,
        }
        if self.wall_time is not None:
            manifest["wall_time"] = round(self.wall_time, 6)
        return {"manifest": manifest, "result": to_jsonable(self.payload)}


def digest(content):
    """SHA-256 hex digest of text or bytes."""
    if isinstance(content, str):
        content = content.encode("utf-8")
    return hashlib.sha256(content).hexdigest()


class RunAuditLog:
    """
    Audit record for one CLI run

    This class handles:
    - Recording the command, seed and digests of every input file
    - Timing the run, logged always and embedded only when configured
    - Producing the canonical manifest wrapped around a result payload
    """

    def __init__(self, command, seed, settings=None):
        """
        Initialize the audit log

        Args:
            command (str): The subcommand being run
            seed (int): The run seed
            settings (EpwLabSettings, optional): Defaults to the active settings
        """
        self.command = command
        self.seed = seed
        self.settings = settings or get_settings()
        self.inputs = {}
        self._started = time.perf_counter()

    def log_input(self, name, content):
        """
        Record an input by digest

        Args:
            name (str): Flag or file name the input came from
            content (str | bytes): Raw content

        Returns:
            str: The SHA-256 digest
        """
        value = digest(content)
        self.inputs[name] = value
        _logger.debug(f"{self.command}: input {name} sha256={value}")
        return value

    def finish(self, payload):
        """
        Wrap a payload in its manifest

        Returns:
            RunManifest: Wall time included only when record_wall_time is set
        """
        elapsed = time.perf_counter() - self._started
        _logger.info(f"{self.command} finished in {elapsed:.3f}s (seed {self.seed})")
        return RunManifest(
            command=self.command,
            seed=self.seed,
            inputs=dict(self.inputs),
            payload=payload,
            wall_time=elapsed if self.settings.record_wall_time else None,
        )

    def render(self, payload):
        return dumps(self.finish(payload).as_dict())
