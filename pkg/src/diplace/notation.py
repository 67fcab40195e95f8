"""Text notation for game values.

Grammar (whitespace-insensitive)::

    game      := shorthand | "{" list "|" list "}"
    list      := empty | game ("," game)*
    shorthand := integer | integer "/" power-of-two | "*" digits?
               | ("^" | "v") digits? "*"?

``^3`` is ``^+^+^`` and ``*3`` is the nim-heap of size 3.  The printer emits
integers, dyadic fractions, nimbers, ``^``, ``^*``, ``v`` and ``v*``; every
other value is printed in braces with options in the store's total order.
"""
from __future__ import annotations

from diplace import games
from diplace.games import GameId, LiteralGame


class GameSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos
        self.text = text


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> GameSyntaxError:
        return GameSyntaxError(message, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def digits(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start : self.pos]

    def game(self) -> LiteralGame:
        c = self.peek()
        if c == "{":
            self.pos += 1
            left = self.options("|")
            self.pos += 1
            right = self.options("}")
            self.pos += 1
            return LiteralGame(tuple(left), tuple(right))
        if c == "*":
            self.pos += 1
            d = self.digits()
            return games.to_literal(games.nimber(int(d) if d else 1))
        if c in ("^", "v"):
            self.pos += 1
            d = self.digits()
            k = int(d) if d else 1
            base = games.UP if c == "^" else games.DOWN
            g = games.multiple(base, k)
            if self.peek() == "*":
                self.pos += 1
                g = games.add(g, games.STAR)
            return games.to_literal(g)
        if c == "-" or c.isdigit():
            return self.number()
        raise self.error("expected a game" if c else "unexpected end of input")

    def number(self) -> LiteralGame:
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        d = self.digits()
        if not d:
            raise self.error("expected digits")
        num = sign * int(d)
        if self.peek() == "/":
            self.pos += 1
            start = self.pos
            den_s = self.digits()
            if not den_s:
                raise self.error("expected denominator")
            den = int(den_s)
            if den < 1 or den & (den - 1):
                self.pos = start
                raise self.error("denominator must be a power of two")
            return games.to_literal(games.dyadic(num, den.bit_length() - 1))
        return games.to_literal(games.integer(num))

    def options(self, terminator: str) -> list[LiteralGame]:
        out: list[LiteralGame] = []
        if self.peek() == terminator:
            return out
        while True:
            out.append(self.game())
            c = self.peek()
            if c == ",":
                self.pos += 1
                continue
            if c == terminator:
                return out
            raise self.error(f"expected ',' or {terminator!r}")


def parse_game(text: str) -> LiteralGame:
    """Parse a game in the notation above into a literal tree."""
    p = _Parser(text)
    g = p.game()
    if p.peek():
        raise p.error("trailing characters")
    return g


def parse_value(text: str) -> GameId:
    return games.canonicalize(parse_game(text))


def _format_number(num: int, k: int) -> str:
    return str(num) if k == 0 else f"{num}/{1 << k}"


_SHORT = {
    games.UP: "^",
    games.DOWN: "v",
    games.UP_STAR: "^*",
    games.DOWN_STAR: "v*",
}


def format_game(x: GameId) -> str:
    """Deterministic text for a canonical value."""
    short = _SHORT.get(x)
    if short is not None:
        return short
    nv = games.number_value(x)
    if nv is not None:
        return _format_number(*nv)
    n = games.nim_value(x)
    if n is not None:
        return "*" if n == 1 else f"*{n}"
    left = ",".join(format_game(a) for a in games.sort_values(games.left_options(x)))
    right = ",".join(format_game(b) for b in games.sort_values(games.right_options(x)))
    return "{" + left + "|" + right + "}"


def format_literal(g: LiteralGame) -> str:
    left = ",".join(format_literal(a) for a in g.left)
    right = ",".join(format_literal(b) for b in g.right)
    return "{" + left + "|" + right + "}"


Z_TEXT = "{^*,^,{1|*,0}|{0,*|-1},v,v*}"

# Day-3 values that need eight vertices; the last entry is Z.  "±1" is
# written {1|-1} and "x+*" uses the ^*, v* shorthands or braces.
MISSING_DAY3_TEXT = (
    "{v,v*,{1|-1}|-2}",
    "{2|{1|-1},^*,^}",
    "{v,v*,{1|-1}|-1,{-1|-1}}",
    "{{1|1},1|{1|-1},^*,^}",
    "{*,*2,0|{*,0|-1},v,v*}",
    "{^*,^,{1|0,*}|0,*2,*}",
    "{0,^*,{1|*,0}|{*,0|-1},v,v*}",
    "{^*,^,{1|0,*}|{0,*|-1},v*,0}",
    "{0,^*,{1|*,0}|*,{*,0|-1},v}",
    "{^,{1|0,*},*|{0,*|-1},v*,0}",
    "{*,^,{1|*,0}|{*,0|-1},v,v*}",
    "{^*,^,{1|0,*}|{0,*|-1},v,*}",
    "{^*,^,{1|*,0}|v,{0|-1}}",
    "{{1|0},^|{0,*|-1},v,v*}",
    "{^*,^,{1|*,0}|{*|-1},{-1|0},{0|-1}}",
    "{{1|0},{0|1},{1|*}|{0,*|-1},v,v*}",
    "{*,^,{1|*,0}|{0,*|-1},v,*}",
    "{0,^*,{1|*,0}|{0,*|-1},v*,0}",
    "{^*,^,{1|*,0}|{0,*|-1},v,v*}",
)


def z_value() -> GameId:
    return parse_value(Z_TEXT)


def missing_day3_values() -> list[GameId]:
    return [parse_value(t) for t in MISSING_DAY3_TEXT]
