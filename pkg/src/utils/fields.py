"""Pydantic field types for exact values.

Rationals and polynomials stay exact sympy-backed objects in Python and
serialize as strings in JSON ("-3/8", "x^4-2x^2+1"). Big integers
serialize as decimal strings so no JSON reader can round them.
"""

from typing import Annotated

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema
from sympy import Rational

from src.errors import ParseError
from src.exactnum.models import rat_to_str, to_rat
from src.upoly.models import Poly, format_poly, to_poly


def _to_bigint(value) -> int:
    if isinstance(value, bool):
        raise ParseError(f"not an integer: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
        return int(value)
    if isinstance(value, Rational) and value.q == 1:
        return int(value.p)
    raise ParseError(f"not an integer: {value!r}")


RatField = Annotated[
    Rational,
    PlainValidator(to_rat),
    PlainSerializer(rat_to_str, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string"}),
]

PolyField = Annotated[
    Poly,
    PlainValidator(to_poly),
    PlainSerializer(format_poly, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string"}),
]

BigIntField = Annotated[
    int,
    PlainValidator(_to_bigint),
    PlainSerializer(str, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string"}),
]
