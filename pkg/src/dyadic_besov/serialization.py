"""JSON file formats for functions and block decompositions.

Function file::

    {"resolution": J, "values": ["n/d", ...]}       # exactly 2^J entries

Block file (all-zero levels omitted)::

    {"resolution": J, "mean": "n/d",
     "blocks": [{"level": j, "resolution": j + 1, "values": [...]}, ...]}
"""
import json
from fractions import Fraction

from ._mp import frac_str
from .dyadic import BlockSequence, LCFunction, decompose, reconstruct

__all__ = [
    "blocks_from_json",
    "blocks_to_json",
    "dumps",
    "function_from_json",
    "function_to_json",
    "load_json",
    "save_json",
]


def _parse_value(v):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ValueError(f"function values must be 'num/den' strings, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {v!r}") from exc


def function_to_json(f: LCFunction) -> dict:
    return {"resolution": f.resolution, "values": [frac_str(v) for v in f.values]}


def function_from_json(obj) -> LCFunction:
    if not isinstance(obj, dict) or "resolution" not in obj or "values" not in obj:
        raise ValueError("function file needs 'resolution' and 'values'")
    J, values = obj["resolution"], obj["values"]
    if isinstance(J, bool) or not isinstance(J, int) or J < 0:
        raise ValueError("'resolution' must be a nonnegative integer")
    if not isinstance(values, list) or len(values) != 1 << J:
        n = len(values) if isinstance(values, list) else "non-list"
        raise ValueError(f"'values' must hold 2^{J} = {1 << J} entries, got {n}")
    return LCFunction(J, [_parse_value(v) for v in values])


def blocks_to_json(b: BlockSequence) -> dict:
    out = []
    for j, d in enumerate(b.blocks):
        if not d.is_zero():
            out.append({"level": j, **function_to_json(d)})
    return {"resolution": b.resolution, "mean": frac_str(b.mean), "blocks": out}


def blocks_from_json(obj) -> BlockSequence:
    if not isinstance(obj, dict) or not {"resolution", "mean", "blocks"} <= obj.keys():
        raise ValueError("block file needs 'resolution', 'mean' and 'blocks'")
    J = obj["resolution"]
    if isinstance(J, bool) or not isinstance(J, int) or J < 0:
        raise ValueError("'resolution' must be a nonnegative integer")
    table = [LCFunction.zero(j + 1) for j in range(J)]
    for entry in obj["blocks"]:
        j = entry.get("level")
        if not isinstance(j, int) or not 0 <= j < J:
            raise ValueError(f"block level {j!r} outside [0, {J})")
        d = function_from_json(entry)
        if d.resolution != j + 1:
            raise ValueError(f"block {j} must have resolution {j + 1}")
        table[j] = d
    return BlockSequence(_parse_value(obj["mean"]), tuple(table))


def dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def save_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def roundtrip(f: LCFunction) -> LCFunction:
    return reconstruct(blocks_from_json(blocks_to_json(decompose(f))))
