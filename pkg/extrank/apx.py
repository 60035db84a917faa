"""
APX reading and writing.

    arg(<name>).
    att(<attacker>,<target>).

Names match [A-Za-z0-9_]+. Statements may share a line; '%' starts a comment
running to the end of the line. Duplicate attacks collapse silently.
"""

import logging
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .errors import ApxSyntaxError, DuplicateArgument, ExtRankError, UnknownArgument
from .framework import Framework, build_framework

logger = logging.getLogger(__name__)

_STATEMENT = re.compile(r"\s*(?P<body>[^.%]*?)\s*\.")
_ARG = re.compile(r"arg\(\s*(?P<name>[A-Za-z0-9_]+)\s*\)")
_ATT = re.compile(r"att\(\s*(?P<attacker>[A-Za-z0-9_]+)\s*,\s*(?P<target>[A-Za-z0-9_]+)\s*\)")


def _strip_comment(line: str) -> str:
    cut = line.find("%")
    return line if cut < 0 else line[:cut]


def parse_apx(text: str, source: Optional[str] = None) -> Framework:
    """Framework from APX text; errors carry 1-based line and column"""
    names: List[str] = []
    declared = {}
    attacks: List[Tuple[str, str]] = []
    pending: List[Tuple[str, str, int, int]] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        position = 0
        while position < len(line):
            if not line[position:].strip():
                break
            match = _STATEMENT.match(line, position)
            if match is None:
                column = position + len(line[position:]) - len(line[position:].lstrip()) + 1
                raise ApxSyntaxError("statement is not terminated by '.'", line_number, column, source)
            body = match.group("body")
            column = match.start("body") + 1
            arg = _ARG.fullmatch(body)
            att = _ATT.fullmatch(body)
            if arg:
                name = arg.group("name")
                if name in declared:
                    raise DuplicateArgument(name)
                declared[name] = len(names)
                names.append(name)
            elif att:
                pending.append((att.group("attacker"), att.group("target"), line_number, column))
            else:
                raise ApxSyntaxError(
                    f"invalid statement '{body}', expected arg(x) or att(x,y)", line_number, column, source
                )
            position = match.end()

    for attacker, target, line_number, column in pending:
        for name in (attacker, target):
            if name not in declared:
                raise UnknownArgument(name, f"line {line_number}, column {column}")
        attacks.append((attacker, target))

    framework = build_framework(names, attacks)
    logger.debug("parsed %s: %d arguments, %d attacks", source or "<text>", framework.n, len(framework.attacks))
    return framework


def read_apx(path: Union[str, Path]) -> Framework:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ExtRankError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_apx(text, source=str(path))


def dump_apx(F: Framework) -> str:
    return str(F)


def write_apx(F: Framework, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_apx(F), encoding="utf-8")
