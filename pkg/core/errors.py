"""
Errors - 统一异常层级

所有领域函数只负责抛出异常；CLI 和 HTTP 路由负责把异常翻译成
退出码 / HTTP 状态码。每个异常类携带 exit_code：

    1 用法错误（argparse）
    2 解析 / 校验错误
    3 领域错误（NotAKnot、NoWitness 等）
    4 内部一致性错误（BoundViolation 等）
"""

from typing import Optional


class SatWidthError(Exception):
    """所有工具箱异常的基类"""

    exit_code: int = 1

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__


# ==================== 解析 / 校验（exit 2） ====================

class ParseError(SatWidthError):
    """文件格式错误，携带行号"""

    exit_code = 2

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ValidationError(SatWidthError):
    """Morse 词不是合法的纽结表示"""

    exit_code = 2

    def __init__(self, message: str = "", event_index: Optional[int] = None):
        self.event_index = event_index
        if event_index is not None:
            message = f"event {event_index}: {message}"
        super().__init__(message)


class NegativeStrands(ValidationError):
    pass


class NonZeroEnd(ValidationError):
    pass


class InvalidPosition(ValidationError):
    pass


class MultiComponent(ValidationError):
    """追踪得到 ≥ 2 个分支：合法的链环，但不是纽结"""

    def __init__(self, message: str = "", components: int = 2):
        self.components = components
        super().__init__(message or f"word traces {components} components")


class EmptyPresentation(ValidationError):
    pass


# ==================== 领域错误（exit 3） ====================

class DomainError(SatWidthError):
    exit_code = 3


class NotAKnot(DomainError):
    pass


class InvalidSite(DomainError):
    pass


class InvalidBraid(DomainError):
    pass


class NoWitness(DomainError):
    pass


class NonCancelable(DomainError):
    pass


class MalformedFoliation(DomainError):
    pass


class PreconditionFailed(DomainError):
    pass


class NotATree(DomainError):
    pass


class IllegalMove(DomainError):
    pass


class UnknownKnot(DomainError):
    pass


# ==================== 内部错误（exit 4） ====================

class InternalError(SatWidthError):
    exit_code = 4


class BoundViolation(InternalError):
    """计算出的不变量低于已证明的下界，一定是实现 bug"""
    pass


class InvariantMismatch(InternalError):
    pass


class CatalogMismatch(InternalError):
    pass
