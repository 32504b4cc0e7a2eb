"""JSON rendering of class groups.

Integers whose magnitude needs more than 53 bits are written as decimal
strings so that readers using IEEE doubles lose nothing; the parser accepts
either spelling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .classgroup import ClassGroup
from .errors import ValidationError
from .forms import BQF

_SAFE = 2**53


def enc_int(x: int) -> int | str:
    return x if -_SAFE < x < _SAFE else str(x)


def dec_int(x: Any) -> int:
    if isinstance(x, bool):
        raise ValidationError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise ValidationError(f"expected an integer, got {x!r}")


def group_to_dict(g: ClassGroup, with_table: bool = False) -> dict:
    classes = []
    for rep in g:
        classes.append(
            {
                "a": enc_int(rep.form.a),
                "b": enc_int(rep.form.b),
                "c": enc_int(rep.form.c),
                "i": rep.i,
                "u": rep.pair.u,
                "v": rep.pair.v,
            }
        )
    out = {
        "d_K": g.field.d,
        "N": g.n,
        "order": g.order,
        "invariant_factors": g.invariant_factors(),
        "classes": classes,
    }
    if with_table:
        out["table"] = g.table()
    return out


def group_to_json(g: ClassGroup, with_table: bool = False, indent: int | None = None) -> str:
    return json.dumps(group_to_dict(g, with_table), indent=indent)


@dataclass
class ParsedClass:
    form: BQF
    i: int
    u: int
    v: int


@dataclass
class ParsedGroup:
    d_K: int
    N: int
    order: int
    invariant_factors: list[int]
    classes: list[ParsedClass]
    table: list[list[int]] | None = field(default=None)


def parse_group(text: str | dict) -> ParsedGroup:
    obj = json.loads(text) if isinstance(text, str) else text
    try:
        classes = [
            ParsedClass(BQF(dec_int(c["a"]), dec_int(c["b"]), dec_int(c["c"])), c["i"], c["u"], c["v"])
            for c in obj["classes"]
        ]
        pg = ParsedGroup(
            dec_int(obj["d_K"]),
            dec_int(obj["N"]),
            dec_int(obj["order"]),
            [dec_int(x) for x in obj["invariant_factors"]],
            classes,
            obj.get("table"),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed class group JSON: {exc}") from None
    if pg.order != len(pg.classes):
        raise ValidationError(f"order {pg.order} but {len(pg.classes)} classes listed")
    return pg
