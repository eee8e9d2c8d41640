"""
Braid Patterns - 实心环中的辫子式样

指数为 n 的辫子式样与每个子午盘恰好交 n 次，所以绕数 #(K̂) = n。

.braid 文件格式：第一行 `index <n>`，之后每行一个字母 `s+ <j>` / `s- <j>`，
1 ≤ j ≤ n−1；`#` 开始注释。命令行内联形式用 `;` 分隔行。
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

from core.errors import InvalidBraid, ParseError
from plugins.morse.codec import parse_natural, strip_comment
from plugins.morse.presentation import MorsePresentation, cap, crossing, cup, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidLetter:
    """生成元 σ_j^{±1}"""
    generator: int
    sign: int = 1

    def __str__(self) -> str:
        return f"s{'+' if self.sign > 0 else '-'} {self.generator}"


@dataclass(frozen=True)
class BraidWord:
    index: int
    letters: Tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        if self.index < 1:
            raise InvalidBraid(f"braid index must be >= 1, got {self.index}")
        for letter in self.letters:
            if not 1 <= letter.generator <= self.index - 1:
                raise InvalidBraid(
                    f"generator s{letter.generator} out of range for index {self.index}"
                )
            if letter.sign not in (1, -1):
                raise InvalidBraid(f"letter sign must be +1 or -1, got {letter.sign}")

    def permutation(self) -> Tuple[int, ...]:
        """字母依次作用后的股置换：perm[i] 是底部第 i 股到达的顶部位置"""
        order = list(range(self.index))
        for letter in self.letters:
            j = letter.generator - 1
            order[j], order[j + 1] = order[j + 1], order[j]
        perm = [0] * self.index
        for top, strand in enumerate(order):
            perm[strand] = top
        return tuple(perm)


def full_twist(n: int, twists: int) -> Tuple[BraidLetter, ...]:
    """f 个带号全扭转：(σ_1 … σ_{n−1})ⁿ 的 f 次幂"""
    if n < 2 or twists == 0:
        return ()
    sign = 1 if twists > 0 else -1
    if sign > 0:
        one = [BraidLetter(j, 1) for j in range(1, n)] * n
    else:
        one = [BraidLetter(j, -1) for j in range(n - 1, 0, -1)] * n
    return tuple(one * abs(twists))


def cycle_count(perm: Tuple[int, ...]) -> int:
    seen = set()
    cycles = 0
    for start in range(len(perm)):
        if start in seen:
            continue
        cycles += 1
        i = start
        while i not in seen:
            seen.add(i)
            i = perm[i]
    return cycles


def winding_number(b: BraidWord) -> int:
    """辫子式样的绕数等于其指数"""
    return b.index


def braid_closure(b: BraidWord) -> MorsePresentation:
    """
    把辫子闭合成 Morse 词：n 个嵌套 cup、字母作为交叉、n 个嵌套 cap。

    Raises:
        MultiComponent: 置换不是 n-轮换时闭包是链环
    """
    n = b.index
    events = [cup(i) for i in range(n)]
    events += [crossing(letter.generator - 1, letter.sign) for letter in b.letters]
    events += [cap(i) for i in range(n - 1, -1, -1)]
    return validate(events)


# ==================== 文件格式 ====================

def parse_braid(text: str) -> BraidWord:
    lines: List[Tuple[int, str]] = []
    for line_no, raw in enumerate(text.replace(";", "\n").splitlines(), 1):
        line = strip_comment(raw)
        if line:
            lines.append((line_no, line))

    if not lines:
        raise ParseError("empty braid file", 1)

    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "index":
        raise ParseError(f"expected 'index <n>', got {header!r}", line_no)
    index = parse_natural(parts[1], line_no, "braid index")

    letters = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("s+", "s-"):
            raise ParseError(f"expected 's+ <j>' or 's- <j>', got {line!r}", line_no)
        generator = parse_natural(parts[1], line_no, "generator")
        letters.append(BraidLetter(generator, 1 if parts[0] == "s+" else -1))

    return BraidWord(index, tuple(letters))


def serialize_braid(b: BraidWord) -> str:
    return f"index {b.index}\n" + "".join(f"{letter}\n" for letter in b.letters)


def load_braid(path: Path) -> BraidWord:
    return parse_braid(Path(path).read_text(encoding="utf-8"))
