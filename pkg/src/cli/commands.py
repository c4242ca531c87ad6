# commands.py
"""
命令行前端。子命令:
    check D [--oracle]              (*) (**) (***) 报告, 可选暴力对照
    enumerate --max N [--filter …]  满足所选谓词的 d, 升序
    family list | family verify ID  见证族 (符号 / 逐 k 数值)
    normalize --geometry … --m … --c … --s …
    certify   --geometry … --m … --c … --s …   规范形 → 满足 (***) 的 d
    pell --d D [--n N]
    disc "3,2;2,4"
    residues                        DP6 有理截面的 mod 6 校验

退出码: 0 = 已求值, 1 = 校验 / 可容许性失败, 2 = 用法 / 解析错误。
"""

from __future__ import annotations
import argparse
import sys
from typing import Callable, Dict, List, Optional, Sequence

from src.arith.exact_arith import factorize, integer_sqrt_exact
from src.diophantine.conditions import (
    PREDICATES,
    condition_report,
    enumerate_discriminants,
    triple_star_bruteforce,
)
from src.diophantine.pell import cf_sqrt, pell_solve
from src.families.catalog import FamilyId, FamilySpec, family_catalog, get_family
from src.families.residues import dp6_residue_equivalence_check, residue_table, section_lift
from src.families.verify import (
    certify_canonical_form,
    derive_form,
    expand_identity,
    verify_family_numeric,
)
from src.lattice.gram import discriminant, parse_gram
from src.lattice.normal_form import (
    AdmissibilityViolation,
    Geometry,
    InvalidPairing,
    MarkedClassData,
    NormalizationFailure,
    dp6_section_pairing,
    normalize,
)
from src.cli.render import (
    OutputEnvelope,
    OutputFormat,
    banner,
    render_csv,
    render_json,
    render_table,
    yes_no,
)
from src.utils.config_loader import load_config, validate_config
from src.utils.logger import get_logger, quiet, verbose, set_level

log = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ENUMERATE_COLUMNS = ("d", "star", "double_star", "triple_star", "a", "n", "x", "y", "period_length")
FAMILY_ROW_COLUMNS = ("k", "a", "x", "y", "n", "d", "lhs", "rhs", "triple_star", "ok")


class UsageError(ValueError):
    """参数合法但取值不可用 (退出码 2)"""


class Context:
    """单次调用的输出上下文"""

    def __init__(self, args: argparse.Namespace, config: Dict, out=None):
        self.args = args
        self.config = config
        self.out = out if out is not None else sys.stdout
        if getattr(args, "json", False):
            self.format = OutputFormat.JSON
        elif getattr(args, "csv", False):
            self.format = OutputFormat.CSV
        else:
            self.format = OutputFormat.TEXT

    def emit(self, text: str):
        self.out.write(text if text.endswith("\n") else text + "\n")

    def emit_json(self, payload):
        env = OutputEnvelope(self.format, self.args.command, payload, self.config["schema_version"])
        self.emit(render_json(env))

    def require_not_csv(self):
        if self.format == OutputFormat.CSV:
            raise UsageError(f"--csv 只适用于行型结果 (enumerate, family verify), 不适用于 {self.args.command}")


# ======================================================================
# 子命令
# ======================================================================


def _oracle_cross_check(ctx: Context, report) -> Optional[Dict]:
    """--oracle: 在配置的盒内暴力搜索 (***) 见证, 与 Pell 判定对照"""
    if not getattr(ctx.args, "oracle", False):
        return None
    a_max, n_max = ctx.config["oracle_a_max"], ctx.config["oracle_n_max"]
    brute = triple_star_bruteforce(report.d, a_max, n_max)
    agrees = brute is None or report.triple_star
    if not agrees:
        log.error("d=%d: 暴力搜索找到见证 (%d, %d), Pell 判定却为否", report.d, brute.a, brute.n)
    return {
        "a_max": a_max,
        "n_max": n_max,
        "witness": brute.to_dict() if brute else None,
        "agrees": agrees,
    }


def cmd_check(ctx: Context) -> int:
    ctx.require_not_csv()
    d = ctx.args.d
    if d < 1:
        raise UsageError(f"d 必须 ≥ 1, got {d}")
    report = condition_report(d)
    oracle = _oracle_cross_check(ctx, report)
    code = EXIT_FAILED if oracle and not oracle["agrees"] else EXIT_OK
    if ctx.format == OutputFormat.JSON:
        payload = report.to_dict()
        if oracle is not None:
            payload["oracle"] = oracle
        ctx.emit_json(payload)
        return code

    lines = [banner(f"判别式 d = {d}")]
    lines.append(f"  (*)   d > 6, d ≡ 0,2 (mod 6):   {yes_no(report.star)}")
    lines.append(f"  (**)  无 4, 9, 奇素数 p ≡ 2 (3): {yes_no(report.double_star)}")
    lines.append(f"  (***) a²d = 2n² + 2n + 2:       {yes_no(report.triple_star)}")
    if d >= 2:
        lines.append(f"  分解:       {factorize(d)}")
    if report.triple_star:
        w, p = report.triple_star_witness, report.pell_certificate
        lines.append(f"  见证:       (a, n) = ({w.a}, {w.n})")
        lines.append(f"  Pell 证书:  x² − {2 * d}·y² = −3, (x, y) = ({p.x}, {p.y})")
    elif report.period_length is not None:
        lines.append(f"  反驳:       √{2 * d} 的渐近分数在完整周期内都不给出 −3")
    else:
        lines.append(f"  反驳:       {2 * d} 为完全平方, (x − r·y)(x + r·y) = −3 无正解")
    if report.period_length is not None:
        lines.append(f"  周期长度:   {report.period_length}")
    if oracle is not None:
        w = oracle["witness"]
        found = f"(a, n) = ({w['a']}, {w['n']})" if w else "盒内无见证"
        lines.append(f"  暴力对照:   a ≤ {oracle['a_max']}, n ≤ {oracle['n_max']}: {found}, {yes_no(oracle['agrees'])}")
    lines.append("=" * 50)
    ctx.emit("\n".join(lines))
    return code


def _parse_filter(text: Optional[str]) -> List[str]:
    if not text:
        return []
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in PREDICATES]
    if unknown:
        raise UsageError(f"未知过滤谓词 {unknown}, 可选: {', '.join(PREDICATES)}")
    return names


def _enumerate_row(report) -> Dict:
    w, p = report.triple_star_witness, report.pell_certificate
    return {
        "d": report.d,
        "star": report.star,
        "double_star": report.double_star,
        "triple_star": report.triple_star,
        "a": w.a if w else None,
        "n": w.n if w else None,
        "x": p.x if p else None,
        "y": p.y if p else None,
        "period_length": report.period_length,
    }


def cmd_enumerate(ctx: Context) -> int:
    max_d = ctx.args.max
    ceiling = ctx.config["enumerate_ceiling"]
    if not (7 <= max_d <= ceiling):
        raise UsageError(f"--max 必须在 [7, {ceiling}], got {max_d}")
    predicates = _parse_filter(ctx.args.filter)
    reports = list(enumerate_discriminants(max_d, predicates))
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json([r.to_dict() for r in reports])
    elif ctx.format == OutputFormat.CSV:
        ctx.emit(render_csv([_enumerate_row(r) for r in reports], ENUMERATE_COLUMNS))
    else:
        title = f"7 ≤ d ≤ {max_d}, 过滤: {', '.join(predicates) or '无'} —— {len(reports)} 个"
        ctx.emit(banner(title))
        if reports:
            ctx.emit(render_table([_enumerate_row(r) for r in reports], ENUMERATE_COLUMNS))
    return EXIT_OK


def _family_summary(spec: FamilySpec) -> Dict:
    return {
        "id": spec.id.value,
        "theorem_case": spec.theorem_case,
        "geometry": spec.geometry.value,
        "case": spec.case_id.value,
        "c": spec.c,
        "witness": {
            "a": str(spec.witness.a), "x": str(spec.witness.x),
            "y": str(spec.witness.y), "n": str(spec.witness.n),
        },
        "form": str(derive_form(spec)),
        "printed_form": str(spec.printed_form),
    }


def cmd_family(ctx: Context) -> int:
    action = ctx.args.family_action
    if action == "list":
        ctx.require_not_csv()
        summaries = [_family_summary(s) for s in family_catalog()]
        if ctx.format == OutputFormat.JSON:
            ctx.emit_json(summaries)
        else:
            ctx.emit(banner("见证族 (a, x, y, n)"))
            for s, spec in zip(summaries, family_catalog()):
                ctx.emit(f"  {s['id']:<8} 情形({s['theorem_case']}) {s['geometry']}/{s['case']} c={s['c']}")
                ctx.emit(f"           d(x,y) = {s['form']}")
                ctx.emit(f"           见证   = {spec.witness}   [{spec.label}]")
        return EXIT_OK

    target = ctx.args.id
    if target.lower() == "all":
        specs = list(family_catalog())
    else:
        try:
            specs = [get_family(target)]
        except ValueError as e:
            raise UsageError(str(e)) from None
    printed = ctx.args.use_printed_form
    if printed and any(s.id != FamilyId.C for s in specs):
        log.info("--use-printed-form: 只有族 C 的印刷系数与推导不同")

    if ctx.args.symbolic:
        ctx.require_not_csv()
        return _family_symbolic(ctx, specs, printed)

    k_min = ctx.args.k_min if ctx.args.k_min is not None else ctx.config["family_k_min"]
    k_max = ctx.args.k_max if ctx.args.k_max is not None else ctx.config["family_k_max"]
    if k_min > k_max:
        raise UsageError(f"需要 --k-min ≤ --k-max, got {k_min} > {k_max}")
    all_ok = True
    payload = []
    csv_rows = []
    for spec in specs:
        rows = verify_family_numeric(spec, k_min, k_max, use_printed_form=printed)
        ok = all(r.ok for r in rows)
        all_ok &= ok
        payload.append({"id": spec.id.value, "ok": ok, "rows": [r.to_dict() for r in rows]})
        csv_rows.extend(dict(r.to_dict(), id=spec.id.value) for r in rows)
        if ctx.format == OutputFormat.TEXT:
            ctx.emit(banner(f"族 {spec.id.value}: k ∈ [{k_min}, {k_max}] —— {'通过' if ok else '失败'}"))
            ctx.emit(render_table([r.to_dict() for r in rows], FAMILY_ROW_COLUMNS))
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(payload)
    elif ctx.format == OutputFormat.CSV:
        ctx.emit(render_csv(csv_rows, ("id",) + FAMILY_ROW_COLUMNS))
    return EXIT_OK if all_ok else EXIT_FAILED


def _family_symbolic(ctx: Context, specs: Sequence[FamilySpec], printed: bool) -> int:
    all_ok = True
    payload = []
    for spec in specs:
        lhs, rhs = expand_identity(spec, use_printed_form=printed)
        ok = lhs == rhs
        all_ok &= ok
        form = spec.printed_form if printed else derive_form(spec)
        payload.append({
            "id": spec.id.value,
            "form": str(form),
            "lhs": str(lhs),
            "rhs": str(rhs),
            "ok": ok,
        })
        if ctx.format == OutputFormat.TEXT:
            ctx.emit(banner(f"族 {spec.id.value} ({'印刷系数' if printed else '推导系数'})"))
            ctx.emit(f"  d(x,y)           = {form}")
            ctx.emit(f"  a²·d(x,y)        = {lhs}")
            ctx.emit(f"  2n² + 2n + 2     = {rhs}")
            ctx.emit(f"  恒等式:           {'成立 ✓' if ok else '不成立 ✗'}")
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(payload)
    return EXIT_OK if all_ok else EXIT_FAILED


def _marked_data(ctx: Context) -> MarkedClassData:
    return MarkedClassData(Geometry(ctx.args.geometry), ctx.args.m, ctx.args.c, ctx.args.s)


def _report_normalization_error(ctx: Context, err: Exception) -> int:
    if isinstance(err, NormalizationFailure):
        log.error("归一化失败 (实现假设被打破): %s", err)
    payload = {"error": type(err).__name__, "message": str(err)}
    if isinstance(err, AdmissibilityViolation):
        payload["residue"] = err.residue
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(payload)
    else:
        ctx.emit(f"{type(err).__name__}: {err}")
    return EXIT_FAILED


def cmd_normalize(ctx: Context) -> int:
    ctx.require_not_csv()
    try:
        form = normalize(_marked_data(ctx), ctx.config["plane_search_bound"])
    except (AdmissibilityViolation, InvalidPairing, NormalizationFailure) as e:
        return _report_normalization_error(ctx, e)
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(form.to_dict())
    else:
        ctx.emit(banner(f"规范形: {form.geometry.value} / case {form.case_id.value}"))
        ctx.emit(f"  k     = {form.k}")
        if form.geometry == Geometry.DP6:
            ctx.emit(f"  c     = {form.c}")
        ctx.emit(f"  gram  = {form.gram}")
        ctx.emit(f"  disc  = {form.disc}")
        ctx.emit(f"  变换  Σ' = {form.transform[2]}·Σ + {form.transform[0]}·H² + {form.transform[1]}·{form.gram.basis_labels[1]}")
    return EXIT_OK


def cmd_certify(ctx: Context) -> int:
    ctx.require_not_csv()
    try:
        form = normalize(_marked_data(ctx), ctx.config["plane_search_bound"])
        cert = certify_canonical_form(form)
    except (ValueError, NormalizationFailure) as e:
        # 含 DP6 且 c = 0 (无见证族覆盖)
        return _report_normalization_error(ctx, e)
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(cert.to_dict())
    else:
        ctx.emit(banner(f"{form.geometry.value} / case {form.case_id.value}, k = {form.k}, 族 {cert.family.value}"))
        ctx.emit(f"  Σ(x,y) = {cert.x}·{form.gram.basis_labels[1]} + {cert.y}·Σ")
        ctx.emit(f"  d      = disc⟨H², Σ(x,y)⟩ = {cert.d}   (*): {yes_no(cert.star)}")
        ctx.emit(f"  (***)  a²d = 2n² + 2n + 2 with (a, n) = ({cert.a}, {cert.n})")
    return EXIT_OK


def cmd_pell(ctx: Context) -> int:
    ctx.require_not_csv()
    D, N = ctx.args.d, ctx.args.n
    if D < 2:
        raise UsageError(f"D 必须 ≥ 2, got {D}")
    sol = pell_solve(D, N)  # |N| ≥ √D 抛 ValueError → 2
    period = len(cf_sqrt(D)[1]) if integer_sqrt_exact(D) is None else None
    payload = {
        "D": D,
        "N": N,
        "solution": sol.to_dict() if sol else None,
        "period_length": period,
    }
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json(payload)
    else:
        ctx.emit(f"x² − {D}·y² = {N}")
        ctx.emit(f"  解: x={sol.x}, y={sol.y}" if sol else "  解: none")
        ctx.emit(f"  周期长度: {period if period is not None else '-'}")
    return EXIT_OK


def cmd_disc(ctx: Context) -> int:
    ctx.require_not_csv()
    g = parse_gram(ctx.args.gram)
    value = discriminant(g)
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json({"gram": g.rows(), "disc": value})
    else:
        ctx.emit(str(value))
    return EXIT_OK


def cmd_residues(ctx: Context) -> int:
    ctx.require_not_csv()
    table = residue_table()
    ok = dp6_residue_equivalence_check()
    rows = [
        {
            "r0": r,
            "pairing_1_2": left,
            "reduction": str(dp6_section_pairing(r)) if left else None,
            "unit_mod_6": right,
            "lift": str(section_lift(r)) if right else None,
        }
        for r, (left, right) in table.items()
    ]
    if ctx.format == OutputFormat.JSON:
        ctx.emit_json({"rows": rows, "equivalent": ok})
    else:
        ctx.emit(banner("Σ·S (mod 6): {1,2} 可达  ⟺  Σ'·F ≡ 1,5 (mod 6) 可达"))
        ctx.emit(render_table(rows, ("r0", "pairing_1_2", "reduction", "unit_mod_6", "lift")))
        ctx.emit(f"  等价性: {'成立 ✓' if ok else '不成立 ✗'}")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS: Dict[str, Callable[[Context], int]] = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "family": cmd_family,
    "normalize": cmd_normalize,
    "certify": cmd_certify,
    "pell": cmd_pell,
    "disc": cmd_disc,
    "residues": cmd_residues,
}


# ======================================================================
# argparse
# ======================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="输出单个 JSON 文档")
    fmt.add_argument("--csv", action="store_true", help="CSV (仅 enumerate / family verify)")
    common.add_argument("--quiet", action="store_true", help="只输出错误日志")
    common.add_argument("--verbose", action="store_true", help="DEBUG 日志")
    common.add_argument("--config", type=str, default=None, help="YAML 配置路径")

    parser = argparse.ArgumentParser(
        prog="hassett",
        description="Hassett 条件 (*) (**) (***)、Gram 规范形与见证族的精确校验",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="判别式 d 的条件报告")
    p.add_argument("d", type=int)
    p.add_argument("--oracle", action="store_true", help="按配置的 oracle 盒子暴力搜索见证并与 Pell 判定对照")

    p = sub.add_parser("enumerate", parents=[common], help="枚举满足条件的 d")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--filter", type=str, default="", help="逗号分隔: star,double_star,triple_star")

    p = sub.add_parser("family", help="见证族")
    fam = p.add_subparsers(dest="family_action", required=True)
    fam.add_parser("list", parents=[common])
    v = fam.add_parser("verify", parents=[common])
    v.add_argument("id", type=str, help="族 id (PlaneI, PlaneII, A-F) 或 all")
    v.add_argument("--symbolic", action="store_true", help="多项式恒等式校验")
    v.add_argument("--k-min", type=int, default=None)
    v.add_argument("--k-max", type=int, default=None)
    v.add_argument("--use-printed-form", action="store_true", help="用印刷系数代替推导出的 d(x,y)")

    for name, help_text in (("normalize", "规范形"), ("certify", "规范形 → 满足 (***) 的 d")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--geometry", choices=[g.value for g in Geometry], required=True)
        p.add_argument("--m", type=int, required=True, help="H²·Σ")
        p.add_argument("--c", type=int, required=True, help="Q·Σ 或 S·Σ")
        p.add_argument("--s", type=int, required=True, help="Σ²")

    p = sub.add_parser("pell", parents=[common], help="x² − D·y² = N")
    p.add_argument("--d", type=int, required=True, help="D")
    p.add_argument("--n", type=int, default=-3, help="N (默认 −3)")

    p = sub.add_parser("disc", parents=[common], help="Gram 矩阵判别式")
    p.add_argument("gram", type=str, help='例如 "3,2;2,4"')

    sub.add_parser("residues", parents=[common], help="DP6 有理截面 mod 6 校验")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse: --help → 0, 用法错误 → 2
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = validate_config(load_config(args.config))
    except (OSError, ValueError) as e:
        log.error("配置错误: %s", e)
        return EXIT_USAGE

    set_level(config["log_level"])
    if args.quiet:
        quiet()
    elif args.verbose:
        verbose()

    ctx = Context(args, config, out)
    try:
        return COMMANDS[args.command](ctx)
    except (ValueError, TypeError) as e:
        log.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
