# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations


class EpwLabError(Exception):
    """Base exception for every error raised by epwlab"""
    pass


class EpwLabInputError(EpwLabError):
    """Exception raised when an input violates an operation's preconditions"""
    pass


class MathematicalFailure(EpwLabError):
    """Exception raised when a computed result contradicts an expected table or bound"""
    pass
