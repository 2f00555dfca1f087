"""
Input parsing and validation for the CLI and the MCP tools.

Board specs:
    coords:m,n:(i,j);(i,j);...
    lambda:n:4,3,2
    skew:n:5,5,4,3,1/2,2,1
    rothe:41523
    hull:35142
each optionally followed by ``:complement``. Whitespace is ignored.
"""

import re
from typing import List, Optional, Tuple

from .diagram import Board, BoardError, ShapeSpec, build
from .helpers import prime_powers_from
from .perms import Permutation, left_hull, rothe

COMPLEMENT_SUFFIX = ":complement"
_CELL = re.compile(r"^\((\d+),(\d+)\)$")


def _int_list(text: str, what: str) -> Tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BoardError(f"cannot parse {what} {text!r}") from None


def _size(text: str) -> int:
    if not text.isdigit():
        raise BoardError(f"grid size must be a nonnegative integer, got {text!r}")
    return int(text)


def parse_board_spec(spec: str) -> Board:
    """
    Parse a board spec into a Board.

    Raises:
        BoardError: unknown kind or malformed body.
    """
    text = "".join(spec.split())
    complement = text.endswith(COMPLEMENT_SUFFIX)
    if complement:
        text = text[: -len(COMPLEMENT_SUFFIX)]
    kind, _, body = text.partition(":")
    if kind == "coords":
        board = _parse_coords(body)
    elif kind in ("lambda", "skew"):
        size, sep, shape = body.partition(":")
        if not sep:
            raise BoardError(f"{kind} spec needs a grid size: {spec!r}")
        n = _size(size)
        lam_text, _, mu_text = shape.partition("/")
        if kind == "lambda" and mu_text:
            raise BoardError("use skew: for shapes with an inner partition")
        board = build(ShapeSpec(_int_list(lam_text, "partition"), _int_list(mu_text, "partition")), n, n)
    elif kind in ("rothe", "hull"):
        w = Permutation.parse(body)
        board = rothe(w) if kind == "rothe" else left_hull(w)
    else:
        raise BoardError(f"unknown board kind {kind!r} in {spec!r}")
    return board.complement() if complement else board


def _parse_coords(body: str) -> Board:
    size, sep, cells_text = body.partition(":")
    if not sep:
        raise BoardError(f"coords spec needs m,n before the cell list: {body!r}")
    dims = size.split(",")
    if len(dims) != 2:
        raise BoardError(f"coords spec needs exactly m,n, got {size!r}")
    m, n = _size(dims[0]), _size(dims[1])
    cells = []
    for chunk in filter(None, cells_text.split(";")):
        match = _CELL.match(chunk)
        if not match:
            raise BoardError(f"malformed cell {chunk!r}")
        cells.append((int(match.group(1)), int(match.group(2))))
    if len(set(cells)) != len(cells):
        raise BoardError("duplicate cells in coords spec")
    return Board(m, n, frozenset(cells))


def format_board_spec(board: Board) -> str:
    """coords spec that parses back to an equal board."""
    cells = ";".join(f"({i},{j})" for i, j in board.sorted_cells())
    return f"coords:{board.m},{board.n}:{cells}"


def parse_q_list(text: Optional[str]) -> Optional[List[int]]:
    """Comma separated prime powers, order kept."""
    if text is None or not text.strip():
        return None
    try:
        values = [int(part) for part in "".join(text.split()).split(",")]
    except ValueError:
        raise ValueError(f"cannot parse q list {text!r}") from None
    return prime_powers_from(values)


def validate_rank(board: Board, r: int) -> None:
    if not 0 <= r <= min(board.m, board.n):
        raise BoardError(f"rank {r} outside [0, {min(board.m, board.n)}] for a {board.m}x{board.n} board")


def validate_convention(convention: str) -> str:
    value = convention.upper()
    if value not in ("SE", "NE"):
        raise ValueError(f"convention must be SE or NE, got {convention!r}")
    return value