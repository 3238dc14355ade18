"""
Expression grammar service.

This module parses and renders the text forms of the command line:

    expr := term (('+' | '-') term)*
    term := [number '*'] atom | number
    atom := 't' ['^' number] | 'abs(t)' '^' number | 'exp(' [number '*'] 't' ')'

Numbers are decimal literals with optional sign and exponent part. The
source is split into tokens first; whitespace separates tokens and is
otherwise ignored. Power atoms build a PowerSum. A Liouville atom (abs or
exp) stands alone, optionally scaled; ``exp(-c*t)`` is the mirrored
exponential the Weyl integral acts on.
"""

import math
import re
from typing import List, NamedTuple, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.exceptions import ParseError
from app.schemas.exponent_law import OperatorKind, OperatorStep, OperatorWord
from app.schemas.liouville import LiouvilleTerm
from app.schemas.power_sum import FracOrder, PowerSum

NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
TOKEN = re.compile(
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z]+)|(?P<symbol>[-+*^()])"
)

Parsed = Union[PowerSum, LiouvilleTerm]


class Expression(BaseModel):
    """Schema for a parsed expression and its source text."""

    model_config = ConfigDict(frozen=True)

    source: str = Field(..., description="Text as given")
    parsed: Union[PowerSum, LiouvilleTerm] = Field(..., description="Canonical value")

    @property
    def is_liouville(self) -> bool:
        """Whether the expression is a single Liouville-class term."""
        return isinstance(self.parsed, LiouvilleTerm)

    def render(self) -> str:
        """Canonical text of the parsed value."""
        return self.parsed.render()


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


def tokenize(source: str) -> List[Token]:
    """
    Split expression text into number, name and symbol tokens.

    Args:
        source: Expression text

    Returns:
        List[Token]: Tokens with the byte offset of their first character

    Raises:
        ParseError: On a character that starts no token
    """
    tokens = []
    index = 0
    while index < len(source):
        if source[index].isspace():
            index += 1
            continue
        match = TOKEN.match(source, index)
        if match is None:
            raise ParseError(
                f"unexpected character {source[index]!r}",
                offset=_byte_offset(source, index),
                expected="number, name or operator",
            )
        tokens.append(Token(match.lastgroup or "", match.group(0), _byte_offset(source, index)))
        index = match.end()
    return tokens


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    def offset(self) -> int:
        """Byte offset in the source of the current token."""
        if self.pos < len(self.tokens):
            return self.tokens[self.pos].offset
        return len(self.source.encode("utf-8"))

    def fail(self, expected: str) -> ParseError:
        found = self.tokens[self.pos].text if self.pos < len(self.tokens) else "end of input"
        return ParseError(
            f"expected {expected}, found {found!r}",
            offset=self.offset(),
            expected=expected,
        )

    def peek(self, text: str) -> bool:
        return self.pos < len(self.tokens) and self.tokens[self.pos].text == text

    def accept(self, text: str) -> bool:
        if self.peek(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail(f"'{text}'")

    def number(self) -> Optional[float]:
        """Consume an unsigned literal, rejecting values that overflow."""
        if self.pos >= len(self.tokens) or self.tokens[self.pos].kind != "number":
            return None
        token = self.tokens[self.pos]
        value = float(token.text)
        if not math.isfinite(value):
            raise ParseError(
                f"number {token.text!r} is out of range",
                offset=token.offset,
                expected="finite number",
            )
        self.pos += 1
        return value

    def require_number(self) -> float:
        sign = -1.0 if self.accept("-") else 1.0
        if sign > 0.0:
            self.accept("+")
        value = self.number()
        if value is None:
            raise self.fail("number")
        return sign * value

    def atom(self, coeff: float) -> Union[Tuple[float, float], LiouvilleTerm]:
        start = self.offset()
        if self.accept("abs"):
            for text in ("(", "t", ")", "^"):
                self.expect(text)
            exponent = self.require_number()
            if not exponent < 0.0:
                raise ParseError(
                    "abs(t) needs a negative exponent",
                    offset=start,
                    expected="negative exponent",
                )
            return LiouvilleTerm.power_of_abs(-exponent, coeff)
        if self.accept("exp"):
            self.expect("(")
            sign = -1.0 if self.accept("-") else 1.0
            value = self.number()
            if value is not None:
                self.expect("*")
            self.expect("t")
            self.expect(")")
            rate = sign * (1.0 if value is None else value)
            if rate == 0.0:
                raise ParseError("exp needs a nonzero rate", offset=start, expected="rate")
            term = LiouvilleTerm.exponential(abs(rate), coeff)
            return term.model_copy(update={"reflected": True}) if rate < 0.0 else term
        if self.accept("t"):
            exponent = self.require_number() if self.accept("^") else 1.0
            return coeff, exponent
        raise self.fail("'t', 'abs(t)' or 'exp('")

    def term(self, sign: float) -> Union[Tuple[float, float], LiouvilleTerm]:
        if self.accept("-"):
            sign = -sign
        elif self.accept("+"):
            pass
        value = self.number()
        if value is None:
            return self.atom(sign)
        if self.accept("*"):
            return self.atom(sign * value)
        return sign * value, 0.0

    def expression(self) -> Parsed:
        if not self.tokens:
            raise self.fail("expression")
        items: List[Union[Tuple[float, float], LiouvilleTerm]] = [self.term(1.0)]
        while self.pos < len(self.tokens):
            if self.accept("+"):
                items.append(self.term(1.0))
            elif self.accept("-"):
                items.append(self.term(-1.0))
            else:
                raise self.fail("'+', '-' or end of input")
        liouville = [item for item in items if isinstance(item, LiouvilleTerm)]
        if liouville:
            if len(items) > 1:
                raise ParseError(
                    "Liouville terms cannot be combined with other terms",
                    offset=0,
                    expected="single term",
                )
            return liouville[0]
        try:
            return PowerSum.from_pairs(items)  # type: ignore[arg-type]
        except ValidationError as exc:
            raise ParseError(
                "merged coefficients overflow", offset=0, expected="finite coefficients"
            ) from exc


def parse(source: str) -> Expression:
    """
    Parse an expression into its canonical form.

    Args:
        source: Expression text, non-empty

    Returns:
        Expression: Source with the parsed PowerSum or LiouvilleTerm

    Raises:
        ParseError: With the byte offset of the failure and the expected token
    """
    return Expression(source=source, parsed=_Parser(source).expression())


def parse_word(source: str) -> OperatorWord:
    """
    Parse a comma-separated operator word such as ``D:0.5,D:1.5``.

    Steps are kept in written order; kinds are J, D and Dc.
    """
    steps = []
    offset = 0
    for chunk in source.split(","):
        kind, sep, order = chunk.strip().partition(":")
        if not sep:
            raise ParseError("expected 'kind:order'", offset=offset, expected="':'")
        try:
            step_kind = OperatorKind(kind.strip())
        except ValueError as exc:
            raise ParseError(
                f"unknown operator {kind.strip()!r}", offset=offset, expected="J, D or Dc"
            ) from exc
        match = NUMBER.fullmatch(order.strip())
        value = float(match.group(0)) if match is not None else math.nan
        if not (math.isfinite(value) and value >= 0.0):
            raise ParseError(
                f"bad order {order.strip()!r}", offset=offset, expected="order >= 0"
            )
        steps.append(OperatorStep(kind=step_kind, order=FracOrder.of(value)))
        offset += len(chunk.encode("utf-8")) + 1
    return OperatorWord(steps=tuple(steps))
