"""
命令行界面模块，提供子命令分派、参数覆盖与报告输出
"""

import sys
import argparse
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import sympy

from src import __version__
from src.config import config
from src.core.conditions import (
    FAILS_WITHIN_BOUNDS, INCONCLUSIVE, AnalysisConfig, analyze, check_maximal, check_minimal,
    definitive_minimal_failure, minimal_failure_audit,
)
from src.core.functionals import (
    KINDS, brauer_certificate, candidate_functionals, necessary_filter,
)
from src.core.polynomial import MonovariatePoly, diagonal
from src.data.parser import ParsedInput, parse_polynomial
from src.data.writer import ReportWriter, format_table, verdict_tables
from src.errors import RadoLabError
from src.search.avoider import check_coloring_avoids, find_avoiding_coloring
from src.search.colorings import Coloring
from src.search.configs import SHAPES, SHAPE_PRODUCT, describe_configuration, find_config_witness
from src.search.solutions import SolutionFamily, enumerate_solutions, parametrized_solutions
from src.utils.logger import setup_logger

logger = logging.getLogger()

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2


def _common_options() -> argparse.ArgumentParser:
    """各子命令共用的选项"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', dest='config_file', default=None,
                        help='YAML配置文件，命令行参数优先于文件')
    common.add_argument('--qmax', type=int, default=None, help='极大条件检验的底数上限')
    common.add_argument('--pmax', type=int, default=None, help='极小条件检验的素数上限')
    common.add_argument('--dmax', type=int, default=None, help='候选泛函的偏移上限')
    common.add_argument('--colors', type=int, default=None, help='颜色数 k')
    common.add_argument('--bound', type=int, default=None, help='搜索上界 N')
    common.add_argument('--seed', type=int, default=None, help='随机种子（随报告输出）')
    common.add_argument('--json', action='store_true', help='在标准输出打印JSON报告')
    common.add_argument('--output', dest='report_file', default=None, help='JSON报告文件路径')
    common.add_argument('--tables', dest='tables_file', default=None, help='Excel表格文件路径（.xlsx）')
    common.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        default=None, help='日志级别')
    common.add_argument('--log-file', default=None, help='日志文件名，空字符串表示只输出到控制台')
    return common


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器

    Returns:
        argparse 解析器
    """
    common = _common_options()
    parser = argparse.ArgumentParser(prog='rado-lab', description='丢番图方程划分正则性分析工具')
    parser.add_argument('--version', action='version', version=f'rado-lab {__version__}')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    sub = subparsers.add_parser('analyze', parents=[common], help='综合各条路线给出结论')
    sub.add_argument('polynomial', help='多项式或方程，如 "x + y - 3z"')

    sub = subparsers.add_parser('functionals', parents=[common], help='枚举候选泛函、过滤并寻找证书')
    sub.add_argument('polynomial')
    sub.add_argument('--kind', choices=list(KINDS) + ['both'], default='both', help='泛函类型')

    sub = subparsers.add_parser('maximal', parents=[common], help='检验极大Rado条件')
    sub.add_argument('polynomial')

    sub = subparsers.add_parser('minimal', parents=[common], help='检验极小Rado条件')
    sub.add_argument('polynomial')

    for name, help_text in (('search-coloring', '搜索避免单色解的着色'),
                            ('solutions', '枚举 [1..N]^n 中的解')):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('polynomial', nargs='?' if name == 'solutions' else None)
        sub.add_argument('--exclude-trivial', action='store_true', help='排除常数解')
        sub.add_argument('--no-repeats', action='store_true', help='排除坐标重复的解')
        if name == 'solutions':
            sub.add_argument('--family', default=None,
                             help='参数化解族：configuration:a0,a1,… 或 squares:a,b,c')

    sub = subparsers.add_parser('check-coloring', parents=[common], help='检验规则着色是否避免单色解')
    sub.add_argument('polynomial')
    sub.add_argument('--coloring', required=True, help='着色规则，如 lnzd:5 或 pullback:omega:lnzd:5')
    sub.add_argument('--exclude-trivial', action='store_true', help='排除常数解')
    sub.add_argument('--no-repeats', action='store_true', help='排除坐标重复的解')

    sub = subparsers.add_parser('find-config', parents=[common], help='搜索单色构型')
    sub.add_argument('--coloring', required=True, help='着色规则')
    sub.add_argument('--poly', dest='polys', action='append', default=None,
                     help='y 的多项式，在0处须为0；可重复，默认为 0 与 y')
    sub.add_argument('--shape', choices=list(SHAPES), default=SHAPE_PRODUCT, help='构型')
    sub.add_argument('--d', default='0', help='shifted 构型中的有理数 d，如 1 或 1/2')

    return parser


def apply_overrides(args: argparse.Namespace) -> None:
    """YAML文件覆盖默认值，命令行参数再覆盖文件"""
    if args.config_file:
        if not config.update_from_yaml(args.config_file):
            raise ValueError(f"无法加载配置文件: {args.config_file}")
    overrides = (
        ('analysis', 'q_max', args.qmax),
        ('analysis', 'p_max', args.pmax),
        ('analysis', 'd_max', args.dmax),
        ('search', 'colors', args.colors),
        ('search', 'bound', args.bound),
        ('search', 'config_bound', args.bound if args.command == 'find-config' else None),
        ('testing', 'seed', args.seed),
        ('basic', 'log_level', args.log_level),
        ('basic', 'log_file', args.log_file),
        ('output', 'report_file', args.report_file),
        ('output', 'tables_file', args.tables_file),
    )
    for section, key, value in overrides:
        if value is not None:
            config.set(section, key, value)


def parse_monovariate(text: str) -> MonovariatePoly:
    """把只含一个变量的表达式解析为单变量多项式，如 "y^2 + 3y" """
    polynomial = parse_polynomial(text).polynomial
    used = polynomial.used_variables()
    if len(used) > 1:
        raise ValueError(f"构型多项式只能含一个变量: {text}")
    position = used[0] if used else 0
    coefficients = [0] * (max(polynomial.total_degree(), 0) + 1)
    for alpha, c in polynomial.items():
        coefficients[alpha.exponents[position]] += c
    return MonovariatePoly(tuple(coefficients))


def parse_family(text: str) -> SolutionFamily:
    """解析 configuration:a0,a1,… 或 squares:a,b,c"""
    kind, _, values = text.partition(':')
    try:
        numbers = [int(v) for v in values.split(',') if v.strip()]
    except ValueError:
        raise ValueError(f"解族参数必须为整数: {values}")
    if kind == 'configuration':
        return SolutionFamily.configuration(numbers)
    if kind == 'squares':
        if len(numbers) != 3:
            raise ValueError("squares 解族需要三个参数 a,b,c")
        return SolutionFamily.squares(*numbers)
    raise ValueError(f"未知的解族: {kind}")


def _search_echo() -> Dict[str, Any]:
    return {
        "colors": config.get("search", "colors"),
        "bound": config.get("search", "bound"),
        "seed": config.get("testing", "seed"),
    }


def _analysis_echo(settings: AnalysisConfig) -> Dict[str, Any]:
    return {**settings.to_dict(), "seed": config.get("testing", "seed")}


# ---- 子命令 ----
# 每个处理函数返回 (退出码, 输入描述, 参数回显, 结果, 表格, 控制台文本)

Outcome = Tuple[int, Dict[str, Any], Dict[str, Any], Any, Dict[str, List[Dict]], List[str]]


def _parsed(args) -> ParsedInput:
    return parse_polynomial(args.polynomial)


def cmd_analyze(args) -> Outcome:
    parsed = _parsed(args)
    settings = AnalysisConfig.from_config()
    verdict = analyze(parsed.polynomial, settings)
    result = verdict.to_dict()
    lines = [f"输入: {parsed.polynomial.to_text()}", f"结论: {verdict.outcome}"]
    if verdict.route:
        lines.append(f"路线: {verdict.route.get('type')}")
    lines += [f"说明: {note}" for note in verdict.notes]
    lines += [f"警告: {warning}" for warning in verdict.warnings]
    if result["maximal"]:
        lines += ["", "极大条件:", format_table(result["maximal"], ["q", "status", "polynomial"])]
    if result["minimal"]:
        lines += ["", "极小条件:", format_table(result["minimal"], ["p", "status", "root", "polynomial"])]
    if verdict.certificates:
        lines.append(f"已认证的泛函: {len(verdict.certificates)} 个")
    code = EXIT_INCONCLUSIVE if verdict.outcome == INCONCLUSIVE else EXIT_OK
    return code, parsed.to_dict(), _analysis_echo(settings), result, verdict_tables(result), lines


def cmd_functionals(args) -> Outcome:
    parsed = _parsed(args)
    settings = AnalysisConfig.from_config()
    kinds = list(KINDS) if args.kind == 'both' else [args.kind]
    rows = []
    for kind in kinds:
        for candidate in candidate_functionals(parsed.polynomial, kind, settings.d_max):
            candidate = candidate.with_filter(necessary_filter(candidate))
            if candidate.reason is None:
                certificate = brauer_certificate(candidate, settings.j_max, (settings.e_min, settings.e_max))
                candidate = candidate.with_certificate(certificate)
            rows.append(candidate.to_dict())
    lines = [f"输入: {parsed.polynomial.to_text()}", f"候选泛函 {len(rows)} 个"]
    lines.append(format_table(rows, ["kind", "order", "cells", "offsets", "status"]))
    return EXIT_OK, parsed.to_dict(), _analysis_echo(settings), {"candidates": rows}, {"functionals": rows}, lines


def cmd_maximal(args) -> Outcome:
    parsed = _parsed(args)
    settings = AnalysisConfig.from_config()
    results = check_maximal(parsed.polynomial, range(2, settings.q_max + 1), settings.d_max)
    rows = [results[q].to_dict() for q in sorted(results)]
    code = EXIT_INCONCLUSIVE if any(r["status"] == FAILS_WITHIN_BOUNDS for r in rows) else EXIT_OK
    lines = [f"输入: {parsed.polynomial.to_text()}", format_table(rows, ["q", "status", "polynomial"])]
    return code, parsed.to_dict(), _analysis_echo(settings), {"maximal": rows}, {"maximal": rows}, lines


def cmd_minimal(args) -> Outcome:
    parsed = _parsed(args)
    settings = AnalysisConfig.from_config()
    P = parsed.polynomial
    primes = list(sympy.primerange(2, settings.p_max + 1))
    if not primes:
        raise ValueError(f"p_max = {settings.p_max} 以内没有素数")
    results = check_minimal(P, primes, settings.d_max)
    rows = [results[p].to_dict() for p in sorted(results)]
    definitive = definitive_minimal_failure(P)
    result = {"minimal": rows, "definitive_failure": definitive,
              "diagonal": diagonal(P).to_text(), "audit": minimal_failure_audit(P)}
    code = EXIT_INCONCLUSIVE if any(r["status"] == FAILS_WITHIN_BOUNDS for r in rows) else EXIT_OK
    lines = [f"输入: {P.to_text()}", f"对角多项式: {diagonal(P).to_text()}",
             f"对所有素数确定失败: {'是' if definitive else '否'}",
             format_table(rows, ["p", "status", "root", "polynomial"])]
    return code, parsed.to_dict(), _analysis_echo(settings), result, {"minimal": rows}, lines


def _search_flags(args) -> Tuple[bool, bool]:
    allow_repeats = bool(config.get("search", "allow_repeats")) and not args.no_repeats
    exclude_trivial = bool(config.get("search", "exclude_trivial")) or args.exclude_trivial
    return allow_repeats, exclude_trivial


def cmd_search_coloring(args) -> Outcome:
    parsed = _parsed(args)
    colors = int(config.get("search", "colors"))
    bound = int(config.get("search", "bound"))
    allow_repeats, exclude_trivial = _search_flags(args)
    outcome = find_avoiding_coloring(parsed.polynomial, colors, bound, allow_repeats, exclude_trivial)
    if outcome.found:
        lines = [f"k = {colors}, N = {bound}: 存在避免着色", " ".join(str(c) for c in outcome.coloring.table)]
    else:
        lines = [f"k = {colors}, N = {bound}: none（穷举 {outcome.nodes} 个节点）"]
    rows = [{"n": n, "color": c} for n, c in enumerate(outcome.coloring.table, start=1)] if outcome.found else []
    echo = {**_search_echo(), "allow_repeats": allow_repeats, "exclude_trivial": exclude_trivial}
    return EXIT_OK, parsed.to_dict(), echo, outcome.to_dict(), {"coloring": rows}, lines


def cmd_check_coloring(args) -> Outcome:
    parsed = _parsed(args)
    coloring = Coloring.from_rule(args.coloring)
    bound = int(config.get("search", "bound"))
    allow_repeats, exclude_trivial = _search_flags(args)
    check = check_coloring_avoids(parsed.polynomial, coloring, bound, allow_repeats, exclude_trivial)
    if check.avoids:
        lines = [f"{coloring.to_rule()} 在 N = {bound} 内避免单色解"]
    else:
        lines = [f"{coloring.to_rule()} 在 N = {bound} 内有单色解 {check.violation.assignment}"]
    echo = {**_search_echo(), "coloring": coloring.to_dict(),
            "allow_repeats": allow_repeats, "exclude_trivial": exclude_trivial}
    return EXIT_OK, parsed.to_dict(), echo, check.to_dict(), {}, lines


def cmd_find_config(args) -> Outcome:
    coloring = Coloring.from_rule(args.coloring)
    polys = [parse_monovariate(text) for text in (args.polys or ['0', 'y'])]
    d = Fraction(args.d)
    search = find_config_witness(coloring, polys, args.shape, d=d)
    description = describe_configuration(args.shape, polys, d)
    if search.found:
        lines = [f"{description}: 见证 (x, y) = ({search.witness.x}, {search.witness.y})，"
                 f"元素 {list(search.witness.members)}，颜色 {search.witness.color}"]
        code = EXIT_OK
    else:
        lines = [f"{description}: x, y ≤ {search.bound} 内未找到（不构成否定）"]
        code = EXIT_INCONCLUSIVE
    input_data = {"configuration": description, "coloring": coloring.to_dict()}
    echo = {"config_bound": config.get("search", "config_bound"),
            "config_min": config.get("search", "config_min"), "d": d}
    return code, input_data, echo, search.to_dict(), {}, lines


def cmd_solutions(args) -> Outcome:
    bound = int(config.get("search", "bound"))
    if args.family:
        family = parse_family(args.family)
        instances = parametrized_solutions(family, range(1, bound + 1), range(0, bound + 1))
        input_data = {"family": family.to_dict()}
    else:
        if not args.polynomial:
            raise ValueError("需要给出多项式或 --family")
        parsed = _parsed(args)
        allow_repeats, exclude_trivial = _search_flags(args)
        instances = enumerate_solutions(parsed.polynomial, bound, allow_repeats, exclude_trivial)
        input_data = parsed.to_dict()
    rows = [instance.to_dict() for instance in instances]
    lines = [f"共 {len(rows)} 个解"] + [" ".join(str(v) for v in row["assignment"]) for row in rows]
    return EXIT_OK, input_data, _search_echo(), {"solutions": rows}, {"solutions": rows}, lines


COMMANDS: Dict[str, Callable] = {
    'analyze': cmd_analyze,
    'functionals': cmd_functionals,
    'maximal': cmd_maximal,
    'minimal': cmd_minimal,
    'search-coloring': cmd_search_coloring,
    'check-coloring': cmd_check_coloring,
    'find-config': cmd_find_config,
    'solutions': cmd_solutions,
}


def run(argv: Optional[List[str]] = None) -> Tuple[int, Optional[Dict[str, Any]]]:
    """执行一个子命令

    Args:
        argv: 命令行参数（不含程序名），None 时取 sys.argv

    Returns:
        (退出码, 报告)；输入错误时报告为None
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), None

    config.reset()
    try:
        apply_overrides(args)
    except ValueError as e:
        setup_logger("INFO")
        logger.error(str(e))
        return EXIT_INPUT_ERROR, None
    setup_logger(config.get("basic", "log_level"), config.get("basic", "log_file") or None,
                 config.get("basic", "log_dir"))

    try:
        code, input_data, echo, result, tables, lines = COMMANDS[args.command](args)
    except (RadoLabError, ValueError) as e:
        logger.error(f"输入错误: {e}")
        return EXIT_INPUT_ERROR, None

    writer = ReportWriter()
    report = writer.build_report(args.command, input_data, echo, result)
    if args.json:
        print(writer.dumps(report))
    else:
        print("\n".join(lines))

    report_file = config.get("output", "report_file")
    if report_file:
        writer.write_report(report, report_file)
    tables_file = config.get("output", "tables_file")
    if tables_file and tables:
        writer.write_tables(tables, tables_file)
    return code, report


def run_cli(argv: Optional[List[str]] = None) -> int:
    """运行命令行界面，返回退出码"""
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(run_cli())
