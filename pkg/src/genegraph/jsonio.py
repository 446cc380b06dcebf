"""Canonical JSON encoding shared by the service and the CLI.

Floats are rounded to at most 12 significant decimal digits before dumping,
via a shortest-round-trip double, so the same payload always serializes to
the same bytes no matter which surface produced it.
"""

import json


def round_floats(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {key: round_floats(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(value) for value in obj]
    return obj


def to_json_bytes(obj) -> bytes:
    return json.dumps(
        round_floats(obj), ensure_ascii=False, separators=(",", ":")
    ).encode("utf-8")
