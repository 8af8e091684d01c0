import os
import sys
from enum import Enum

class LogLevel(Enum):
    """日志级别枚举"""
    DEBUG = 0
    INFO = 1
    WARNING = 2
    ERROR = 3

class Logger:
    """简单的日志管理器，输出到stderr，不干扰命令行的标准输出"""

    def __init__(self, name="CM_ENTANGLE", level=LogLevel.INFO):
        self.name = name
        self.level = level

        # 从环境变量读取日志级别
        env_level = os.environ.get('CM_ENTANGLE_LOG_LEVEL', level.name).upper()
        if env_level in LogLevel.__members__:
            self.level = LogLevel[env_level]

    def _should_log(self, level):
        """判断是否应该输出日志"""
        return level.value >= self.level.value

    def _emit(self, level, message):
        if self._should_log(level):
            print(f"[{level.name}] {self.name}: {message}", file=sys.stderr)

    def debug(self, message):
        """调试信息"""
        self._emit(LogLevel.DEBUG, message)

    def info(self, message):
        """一般信息"""
        self._emit(LogLevel.INFO, message)

    def warning(self, message):
        """警告信息"""
        self._emit(LogLevel.WARNING, message)

    def error(self, message):
        """错误信息"""
        self._emit(LogLevel.ERROR, message)
