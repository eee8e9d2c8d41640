"""
.morse 文件格式

每行一个事件：`cup <p>`、`cap <p>`、`x+ <p>`、`x- <p>`；
`#` 开始注释，空行忽略。序列化逐字节确定（无行尾空白，以换行结束）。
"""

import logging
import re
from pathlib import Path
from typing import List

from core.errors import ParseError
from plugins.morse.presentation import EventKind, MorseEvent, MorsePresentation, validate

logger = logging.getLogger(__name__)

_KEYWORDS = {kind.value: kind for kind in EventKind}

# 非负整数的规范写法
_NATURAL = re.compile(r"0|[1-9][0-9]*")


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_natural(token: str, line_no: int, what: str) -> int:
    """ASCII 十进制非负整数，不允许符号、下划线和前导零"""
    if not _NATURAL.fullmatch(token):
        raise ParseError(f"{what} must be a non-negative decimal integer, got {token!r}", line_no)
    return int(token)


def parse_events(text: str) -> List[MorseEvent]:
    """只做词法解析，不校验纽结合法性"""
    events = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in _KEYWORDS:
            raise ParseError(f"expected '<cup|cap|x+|x-> <position>', got {raw.strip()!r}", line_no)
        position = parse_natural(parts[1], line_no, "position")
        events.append(MorseEvent(_KEYWORDS[parts[0]], position))
    return events


def parse_morse(text: str) -> MorsePresentation:
    return validate(parse_events(text))


def serialize_morse(p: MorsePresentation) -> str:
    return "".join(f"{ev.kind.value} {ev.position}\n" for ev in p.events)


def load_morse(path: Path) -> MorsePresentation:
    path = Path(path)
    logger.debug(f"Loading Morse word from {path}")
    return parse_morse(path.read_text(encoding="utf-8"))


def save_morse(p: MorsePresentation, path: Path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_morse(p), encoding="utf-8")
    logger.info(f"Morse word saved to {path}")
