"""有理数的解析与序列化

接口层不出现浮点数：输入接受整数、"p"、"p/q"、有限小数字符串，输出统一为字符串。
"""

from fractions import Fraction
from typing import Any, Iterable, Union

RationalLike = Union[int, str, Fraction]


def parse_rational(value: Any) -> Fraction:
    """把 JSON 值解析成 Fraction

    Raises:
        ValueError: 浮点数、布尔值或无法解析的字符串
    """
    if isinstance(value, bool):
        raise ValueError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"floating point value not accepted: {value!r}; use \"p/q\"")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        try:
            # Fraction 同时接受 "3", "-1/2", "0.25"
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"cannot parse rational {value!r}: {e}") from e
    raise ValueError(f"unsupported rational value {value!r}")


def parse_vector(values: Iterable[Any]) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def format_rational(q: Fraction) -> str:
    """规范字符串：整数写成 "n"，其余写成 "p/q" """
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coord(q: Fraction) -> Union[int, str]:
    """权坐标：整数输出 JSON 整数，非整数输出 "p/q" 字符串"""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return format_rational(q)


def format_vector(values: Iterable[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]
