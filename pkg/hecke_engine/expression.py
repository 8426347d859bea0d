"""
Element expression parser
Reads products such as "Trho * T1 * Trho", "(v^2-1) * [w=1,2,3,4,5,6] * T2" or "v^-1 * T0"
"""
import logging
import re
from typing import Iterator, List, Tuple

from hecke_engine.errors import ExpressionParseError, RankMismatchError
from hecke_engine.hecke import HeckeElt, he_basis, he_mult, he_neg, he_scale, he_unit
from hecke_engine.laurent import LaurentPoly
from hecke_engine.weyl import ap_from_window, ap_generator, check_rank, parse_label

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(
    r"""
      (?P<space>\s+)
    | (?P<generator>T(?:rho|\d+))
    | (?P<window>\[\s*w\s*=(?P<entries>[^\]]*)\])
    | (?P<laurent>\((?P<text>[^()]*)\))
    | (?P<power>v(?:\s*\^\s*(?P<exponent>-?\d+))?)
    | (?P<integer>-?\d+)
    | (?P<minus>-)
    | (?P<star>\*)
    """,
    re.VERBOSE,
)

Token = Tuple[str, re.Match]


def parse_integer_list(text: str, offset: int = 0) -> List[int]:
    """
    Read comma-separated integers such as "7,2,3,4,5,0" or "[7, 2, 3, 4, 5, 0]"

    Raises:
        ExpressionParseError: with the position of the offending entry
    """
    body = text.strip()
    start = offset + text.index(body) if body else offset
    if body.startswith("[") and body.endswith("]"):
        body, start = body[1:-1], start + 1
    values: List[int] = []
    position = start
    for entry in body.split(","):
        stripped = entry.strip()
        if not re.fullmatch(r"-?\d+", stripped):
            raise ExpressionParseError(f"expected an integer, got {stripped!r}", position)
        values.append(int(stripped))
        position += len(entry) + 1
    return values


class ExpressionParser:
    """Parse and evaluate element expressions for a fixed rank"""

    def __init__(self, d: int):
        check_rank(d)
        self.d = d

    def parse(self, text: str) -> HeckeElt:
        """
        Evaluate a product of factors left to right

        Factors: T0..Td, Trho, [w=a1,...,aD], integers, v, v^k, (laurent text);
        a leading '-' negates the next factor.

        Raises:
            ExpressionParseError: with the character position
            RankMismatchError: for a window literal of another rank
        """
        result = he_unit(self.d)
        expect_factor = True
        negate = False
        saw_factor = False
        for kind, match in self._tokens(text):
            if expect_factor:
                if kind == "minus":
                    negate = not negate
                    continue
                if kind == "star":
                    raise ExpressionParseError("expected a factor before '*'", match.start())
                result = self._apply_factor(result, kind, match)
                if negate:
                    result = he_neg(result)
                    negate = False
                expect_factor = False
                saw_factor = True
            else:
                if kind != "star":
                    raise ExpressionParseError("expected '*' between factors", match.start())
                expect_factor = True
        if not saw_factor:
            raise ExpressionParseError("empty expression", 0)
        if expect_factor:
            raise ExpressionParseError("expression ends without a factor", len(text))
        return result

    def _tokens(self, text: str) -> Iterator[Token]:
        position = 0
        while position < len(text):
            match = _TOKEN_PATTERN.match(text, position)
            if match is None:
                raise ExpressionParseError(f"unexpected character {text[position]!r}", position)
            position = match.end()
            if match.lastgroup != "space":
                yield match.lastgroup, match

    def _apply_factor(self, result: HeckeElt, kind: str, match: re.Match) -> HeckeElt:
        if kind == "generator":
            try:
                label = parse_label(match.group("generator"), self.d)
            except ValueError as e:
                raise ExpressionParseError(str(e), match.start()) from e
            return he_mult(result, he_basis(ap_generator(self.d, label)))
        if kind == "window":
            entries = parse_integer_list(match.group("entries"), match.start("entries"))
            if len(entries) != 2 * self.d and len(entries) % 2 == 0 and len(entries) >= 6:
                raise RankMismatchError(self.d, len(entries) // 2)
            return he_mult(result, he_basis(ap_from_window(self.d, entries)))
        if kind == "laurent":
            try:
                scalar = LaurentPoly.parse(match.group("text"))
            except ValueError as e:
                raise ExpressionParseError(str(e), match.start("text")) from e
            return he_scale(scalar, result)
        if kind == "power":
            exponent = match.group("exponent")
            return he_scale(LaurentPoly.monomial(int(exponent) if exponent else 1), result)
        if kind == "integer":
            return he_scale(LaurentPoly.constant(int(match.group("integer"))), result)
        raise ExpressionParseError(f"unexpected token {match.group(0)!r}", match.start())


def parse_expression(d: int, text: str) -> HeckeElt:
    return ExpressionParser(d).parse(text)
