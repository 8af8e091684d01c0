from .logger import Logger, LogLevel
from .series import TruncatedSeries

__all__ = ['Logger', 'LogLevel', 'TruncatedSeries']
