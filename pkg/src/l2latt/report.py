"""Uniform report envelope for the command-line interface.

Every report echoes the command, a digest of its inputs, the results
produced by the library (the envelope performs no arithmetic), an
optional certificate, the tool version, and the seed where applicable.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

from . import __version__


def inputs_digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def make_report(
    command: str,
    inputs: dict,
    results,
    certificate: Optional[list] = None,
    seed: Optional[int] = None,
) -> dict:
    out = {
        "command": command,
        "inputs": inputs,
        "inputs_digest": inputs_digest(inputs),
        "results": results,
        "version": __version__,
    }
    if certificate is not None:
        out["certificate"] = certificate
    if seed is not None:
        out["seed"] = seed
    return out
