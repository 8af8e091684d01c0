"""
命令行入口：每个子命令对应 NODE_CLASS_MAPPINGS 中的一个节点

退出码：0 成功；2 参数错误；3 数学前提不满足（ValueError）；4 内部不变量失败（RuntimeError）。
"""

import argparse
import json
import sys
from typing import Dict, List, NamedTuple, Optional, Sequence

from . import NODE_CLASS_MAPPINGS, NODE_DISPLAY_NAME_MAPPINGS
from .engines.frobenius_engine import DEFAULT_PRIME_BOUND
from .models.formal_group import DEFAULT_PRECISION
from .utils.logger import Logger

logger = Logger("CLI")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

# 全局选项与节点可选输入的对应关系
SHARED_OPTIONS = {
    "prime_bound": "prime_bound",
    "precision": "precision",
    "registry": "registry",
}


class CommandResult(NamedTuple):
    """一次命令调用的结果；status为error时payload为空"""
    status: str
    payload: Dict
    diagnostics: List[str]
    exit_code: int
    output: str = ""


class UsageError(Exception):
    """命令行参数错误"""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _curve_argument(text: str) -> str:
    try:
        values = json.loads(text)
    except json.JSONDecodeError:
        raise argparse.ArgumentTypeError(f"曲线须为JSON数组 [a1,a2,a3,a4,a6]: {text!r}")
    if not (isinstance(values, list) and len(values) == 5
            and all(isinstance(a, int) and not isinstance(a, bool) for a in values)):
        raise argparse.ArgumentTypeError(f"曲线须为5个整数组成的数组: {text!r}")
    return text


def _argument_type(name: str, spec) -> type:
    kind = spec[0]
    if kind == "INT":
        return int
    if name == "curve":
        return _curve_argument
    return str


def build_parser() -> argparse.ArgumentParser:
    """由节点的 INPUT_TYPES 生成argparse解析器"""
    shared = _ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="输出JSON文档")
    shared.add_argument("--prime-bound", dest="prime_bound", type=int, default=DEFAULT_PRIME_BOUND,
                        help=f"Frobenius素数上界（默认 {DEFAULT_PRIME_BOUND}）")
    shared.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help=f"形式群级数精度（默认 {DEFAULT_PRECISION}）")
    shared.add_argument("--registry", default="", help="注册表数据文件（默认使用内置文件）")

    parser = _ArgumentParser(prog="cm_entangle", description="Q上CM椭圆曲线除法域的纠缠分类")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for command, node_cls in NODE_CLASS_MAPPINGS.items():
        sub = subparsers.add_parser(command, parents=[shared], help=NODE_DISPLAY_NAME_MAPPINGS.get(command))
        for name, spec in node_cls.INPUT_TYPES().get("required", {}).items():
            sub.add_argument(name, metavar=name.upper(), type=_argument_type(name, spec))
    return parser


def _error(message: str, exit_code: int) -> CommandResult:
    logger.error(message)
    return CommandResult("error", {}, [message], exit_code)


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """
    解析参数并执行一个子命令

    Args:
        argv: 参数列表，默认为sys.argv[1:]

    Returns:
        CommandResult: 状态、结果文档、诊断信息、退出码与渲染后的输出
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _error(str(e), EXIT_USAGE)

    node_cls = NODE_CLASS_MAPPINGS[args.command]
    inputs = node_cls.INPUT_TYPES()
    kwargs = {name: getattr(args, name) for name in inputs.get("required", {})}
    for name in inputs.get("optional", {}):
        if name in SHARED_OPTIONS:
            kwargs[name] = getattr(args, SHARED_OPTIONS[name])

    node = node_cls()
    try:
        (payload,) = getattr(node, node_cls.FUNCTION)(**kwargs)
    except ValueError as e:
        return _error(str(e), EXIT_PRECONDITION)
    except RuntimeError as e:
        return _error(f"内部校验失败: {e}", EXIT_INTERNAL)
    except Exception as e:
        return _error(f"内部错误: {type(e).__name__}: {e}", EXIT_INTERNAL)

    if args.json:
        output = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    else:
        output = node_cls.format_text(payload)
    return CommandResult("ok", payload, [], EXIT_OK, output)


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(argv)
    if result.output:
        print(result.output)
    for message in result.diagnostics:
        print(message, file=sys.stderr)
    return result.exit_code
