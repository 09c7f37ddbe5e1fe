"""Exact regularization of rational group actions."""

import json

from . import _core
from ._core import (
    Error,
    biregular_complement,
    certify,
    eliminate,
    format_session,
    groebner_basis,
    inverse,
    is_empty_variety,
    normal_form,
    saturate,
)

__all__ = [
    "Error",
    "biregular_complement",
    "certify",
    "eliminate",
    "format_session",
    "groebner_basis",
    "inverse",
    "is_empty_variety",
    "normal_form",
    "run_session",
    "saturate",
]


def run_session(text, max_groebner_steps=0, parallel=False):
    """Run session text and return the report as a dict."""
    return json.loads(_core.run_session(text, max_groebner_steps, parallel))
