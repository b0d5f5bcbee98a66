"""
Reading representation files.

Every input is a single JSON object whose ``"kind"`` field picks the
schema: ``quiver``, ``finset``, ``simplicial``, ``chain`` or ``abelian``.
A bare ``{"vertices": ..., "arrows": ...}`` object is read as a quiver.
"""

from __future__ import annotations

import json
from pathlib import Path

from .chainrep import ChainRep
from .intalg import AbRep
from .quiver import validate_quiver
from .setrep import FinSetRep
from .simplicial import SimplicialRep

KINDS = ("quiver", "finset", "simplicial", "chain", "abelian")


class InputError(Exception):
    """Unreadable or invalid input; the message names what went wrong and where."""


class ParseError(InputError):
    def __init__(self, message: str, offset: int):
        if message.endswith(" at"):
            text = f"parse error: {message} byte {offset}"
        else:
            text = f"parse error at byte {offset}: {message}"
        super().__init__(text)
        self.offset = offset


def parse_bytes(raw: bytes):
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("invalid utf-8", e.start) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, len(text[:e.pos].encode("utf-8"))) from None


def from_object(obj):
    if not isinstance(obj, dict):
        raise InputError("top level must be a JSON object")
    kind = obj.get("kind")
    if kind is None and "vertices" in obj and "arrows" in obj:
        kind = "quiver"
    if kind not in KINDS:
        raise InputError(f"unknown or missing \"kind\": {kind!r} (expected one of {', '.join(KINDS)})")
    try:
        if kind == "quiver":
            return validate_quiver(obj.get("quiver", obj))
        if kind == "finset":
            return FinSetRep.from_json(obj)
        if kind == "simplicial":
            return SimplicialRep.from_json(obj)
        if kind == "chain":
            return ChainRep.from_json(obj)
        return AbRep.from_json(obj)
    except KeyError as e:
        raise InputError(f"invalid {kind} input: missing field {e.args[0]!r}") from None
    except (ValueError, TypeError, AttributeError) as e:
        raise InputError(f"invalid {kind} input: {e}") from None


def parse_input(path):
    """Read and validate one representation file."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {p}: {e.strerror}") from None
    return from_object(parse_bytes(raw))
