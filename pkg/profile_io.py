"""Plain-text approval profile format.

    # optional comment lines
    n m k
    <ballot of voter 0>
    ...
    <ballot of voter n-1>

A ballot line holds strictly ascending candidate indices separated by spaces;
a blank line is an empty ballot.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Tuple, Union

from core import ElectionInstance, InstanceError, build_instance

_TOKEN = re.compile(r"\S+")


class ProfileParseError(ValueError):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


def _tokens(text: str) -> List[Tuple[int, str]]:
    """Tokens with their 1-based column."""
    return [(match.start() + 1, match.group()) for match in _TOKEN.finditer(text)]


def _as_index(token: str, line: int, column: int) -> int:
    if not (token.isascii() and token.isdigit()):
        raise ProfileParseError(line, column, f"expected a non-negative integer, got {token!r}")
    return int(token)


def _parse_header(text: str, line: int) -> Tuple[int, int, int]:
    tokens = _tokens(text)
    if len(tokens) != 3:
        raise ProfileParseError(line, 1, f"header must be 'n m k', got {len(tokens)} fields")
    (n_col, n_tok), (m_col, m_tok), (k_col, k_tok) = tokens
    n = _as_index(n_tok, line, n_col)
    m = _as_index(m_tok, line, m_col)
    k = _as_index(k_tok, line, k_col)
    if n < 1:
        raise ProfileParseError(line, n_col, "n must be at least 1")
    if m < 1:
        raise ProfileParseError(line, m_col, "m must be at least 1")
    if k < 1:
        raise ProfileParseError(line, k_col, "k must be at least 1")
    if k > m:
        raise ProfileParseError(line, k_col, f"k={k} exceeds m={m}")
    return n, m, k


def _parse_ballot(text: str, line: int, m: int) -> Tuple[int, ...]:
    ballot: List[int] = []
    for column, token in _tokens(text):
        index = _as_index(token, line, column)
        if index >= m:
            raise ProfileParseError(line, column, f"candidate {index} is not below m={m}")
        if ballot and index == ballot[-1]:
            raise ProfileParseError(line, column, f"duplicate candidate {index}")
        if ballot and index < ballot[-1]:
            raise ProfileParseError(line, column, f"candidate {index} is not ascending after {ballot[-1]}")
        ballot.append(index)
    return tuple(ballot)


def parse_profile(text: str) -> ElectionInstance:
    header = None
    ballots: List[Tuple[int, ...]] = []
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        if raw.lstrip().startswith("#"):
            continue
        if header is None:
            header = _parse_header(raw, line_no)
            continue
        n, m, _ = header
        if len(ballots) == n:
            # A blank line here would be an extra empty ballot.
            raise ProfileParseError(line_no, 1, f"unexpected line after {n} ballots")
        ballots.append(_parse_ballot(raw, line_no, m))

    if header is None:
        raise ProfileParseError(max(last_line, 1), 1, "missing header 'n m k'")
    n, m, k = header
    if len(ballots) != n:
        raise ProfileParseError(last_line + 1, 1, f"expected {n} ballots, found {len(ballots)}")

    try:
        return build_instance(n, m, k, ballots)
    except InstanceError as exc:
        raise ProfileParseError(1, 1, str(exc)) from exc


def serialize_profile(instance: ElectionInstance) -> str:
    lines = [f"{instance.n} {instance.m} {instance.k}"]
    lines.extend(" ".join(str(c) for c in ballot) for ballot in instance.ballots)
    return "\n".join(lines) + "\n"


def read_profile(path: Union[str, Path]) -> ElectionInstance:
    instance = parse_profile(Path(path).read_text(encoding="utf-8"))
    logging.debug("Loaded profile path=%s n=%s m=%s k=%s", path, instance.n, instance.m, instance.k)
    return instance


def write_profile(path: Union[str, Path], instance: ElectionInstance) -> None:
    Path(path).write_text(serialize_profile(instance), encoding="utf-8")
    logging.info("Wrote profile path=%s n=%s m=%s k=%s", path, instance.n, instance.m, instance.k)
