"""
ToralKit 하위 명령
poset, structure, rings, check-qce, normal, resolve, ext, e2, cells, change-groups
"""

import os
from typing import Dict, List, Optional, Tuple

from ..core.config import Config
from ..core.errors import ConfigError, LatticeError, ModuleError
from ..core.serialization import load_json
from ..lattice import (GroupSpec, IndexKind, build_poset, check_transport_laws, check_weyl_preserves_order,
                       component_structure, connected_structure, discrete_residual, discrete_structure,
                       flag_isotropy_check, wgk_check)
from ..lattice.poset import SubgroupPoset
from ..gralg.module_ops import is_normal_module, localized_ring
from ..gralg.polynomial import GradedRing
from ..diagram import (Level, ModelContext, DiagramModule, build_context, build_Ra, build_Rinv, build_Rtw,
                       check_qce, counit_check, eigenspace_law)
from ..homalg import ext, injective_resolution
from ..cells import (FUNCTORS, adjoint_check, catalog_names, change_groups, dimension_table,
                     fixed_point_decomposition, geometric_support, parse_cell, pi_A, shriek_star_agreement,
                     suspend_adjoint)
from ..adams import E2Page, degeneracy_report, e2_page
from .command_manager import Command, CommandManager, CommandResult
from .selftest import run_selftest


# ----- 공용 도우미 -----

def _subgroup_labels(config: Config) -> Optional[List[str]]:
    text = config.get('subgroups')
    if not text:
        return None
    return [s.strip() for s in text.split(',') if s.strip()]


def _poset(config: Config) -> Tuple[GroupSpec, SubgroupPoset]:
    spec = GroupSpec(config.group)
    return spec, build_poset(spec, config.N, _subgroup_labels(config))


def _context(config: Config, group: Optional[str] = None) -> ModelContext:
    return build_context(group or config.group, config.N, _subgroup_labels(config))


def _level(config: Config, default: str = "G") -> Level:
    text = config.get('level') or default
    try:
        return Level(text)
    except ValueError:
        raise ConfigError(f"수준은 T, N, G 중 하나: {text}")


def load_module(path: str, context: ModelContext) -> DiagramModule:
    """JSON 가군 리터럴 파일 읽기 (군과 절단이 문맥과 맞아야 함)"""
    data = load_json(path)
    group = data.get('group', context.group)
    if group != context.group:
        raise ConfigError(f"가군 파일의 군 {group} ≠ 실행 군 {context.group}")
    N = data.get('N')
    if N is not None and N != context.poset.truncation_N:
        raise ConfigError(f"가군 파일의 절단 N={N} ≠ 실행 N={context.poset.truncation_N}")
    if 'window' not in data:
        raise ConfigError(f"가군 파일에 window 가 없음: {path}")
    module = DiagramModule.from_dict(context, data)
    problems = module.check()
    if problems:
        raise ModuleError(f"가군 리터럴 오류 ({path}): {problems[0]}")
    module.name = module.name or os.path.basename(path)
    return module


def _operand(text: str, config: Config, context: ModelContext, level: Level) -> DiagramModule:
    """파일 경로(.json)이면 가군 리터럴, 아니면 셀 문법"""
    if text.endswith('.json'):
        return load_module(text, context)
    return pi_A(parse_cell(text), context, config.window, level)


def _input(config: Config, context: ModelContext, level: Level) -> DiagramModule:
    path = config.get('module')
    if path:
        return load_module(path, context)
    return _operand(config.get('cell') or "sphere", config, context, level)


def _required(config: Config, key: str, flag: str) -> str:
    value = config.get(key)
    if not value:
        raise ConfigError(f"{flag} 인자가 필요함")
    return value


def _ring_dims(ring: GradedRing, lo: int, hi: int) -> Dict[int, Optional[int]]:
    """차수별 차원 (국소화된 다변수 환은 None)"""
    if ring.rank > 1 and ring.inverted:
        return {t: None for t in range(lo, hi + 1)}
    return {t: ring.dim(t) for t in range(lo, hi + 1)}


# ----- 격자 -----

class PosetCommand(Command):
    name = "poset"

    def execute(self, config: Config) -> CommandResult:
        spec, poset = _poset(config)
        data = poset.to_dict()
        data['weyl_preserves_order'] = check_weyl_preserves_order(poset)
        rows = [list(pair) for pair in data['order']]
        summary = f"{spec.name}: 부분군 {len(poset.subgroups)}개, 공토러스 쌍 {len(rows)}개"
        return CommandResult(data, summary, ["larger", "smaller"], rows)

    def get_description(self) -> str:
        return "부분군 포셋"


class StructureCommand(Command):
    """리/연결/이산 성분 구조와 수송 범주 법칙"""
    name = "structure"

    def execute(self, config: Config) -> CommandResult:
        spec, poset = _poset(config)
        length = spec.rank
        structures = {
            'lie_flags': component_structure(spec, poset, length),
            'lie_subgroups': component_structure(spec, poset, length, IndexKind.SUBGROUPS),
            'connected': connected_structure(poset, length),
            'discrete': discrete_structure(poset, length),
        }
        payload: Dict = {'group': spec.name, 'structures': {}}
        rows = []
        for key, cs in structures.items():
            entry = cs.to_dict()
            try:
                entry['transport'] = check_transport_laws(poset, cs.objects, cs.inclusion)
            except LatticeError as e:
                entry['transport'] = {'skipped': str(e)}
            if cs.is_normal:
                entry['residual'] = discrete_residual(cs).to_dict()
            payload['structures'][key] = entry
            rows.append([key, cs.kind.value, cs.index.value, cs.is_decreasing, cs.is_normal])
        payload['weyl_of_weyl'] = wgk_check(poset)
        payload['flag_isotropy'] = flag_isotropy_check(poset, length)
        lie = structures['lie_flags']
        summary = (f"{spec.name}: 리 구조(깃발) 감소={lie.is_decreasing}, 정규={lie.is_normal}; "
                   f"부분군 색인 감소={structures['lie_subgroups'].is_decreasing}")
        return CommandResult(payload, summary, ["structure", "kind", "index", "decreasing", "normal"], rows)

    def get_description(self) -> str:
        return "성분 구조"


class RingsCommand(Command):
    """R̃, R_inv, R_tw 값의 차수별 차원과 R_inv 의 국소화 비교"""
    name = "rings"

    def execute(self, config: Config) -> CommandResult:
        spec, poset = _poset(config)
        lo, hi = config.window
        cs = component_structure(spec, poset, spec.rank)
        ra = build_Ra(poset, spec.rank)
        rinv = build_Rinv(poset, cs, ra)
        rtw = build_Rtw(poset, cs, rinv)
        payload: Dict = {'group': spec.name, 'window': [lo, hi], 'diagrams': {}}
        rows = []
        for diagram in (ra, rinv, rtw):
            entries = {}
            for flag in diagram.flags:
                if flag in diagram.twisted:
                    twisted = diagram.twisted[flag]
                    dims = {t: None if d is None else twisted.order * d
                            for t, d in _ring_dims(twisted.base, lo, hi).items()}
                else:
                    dims = _ring_dims(diagram.value(flag), lo, hi)
                entries[flag.label] = {'ring': diagram.label(flag), 'dims': {str(t): d for t, d in dims.items()}}
                rows.extend([diagram.flavor.value, flag.label, diagram.label(flag), t, d] for t, d in dims.items())
            payload['diagrams'][diagram.flavor.value] = {'values': entries, 'maps': diagram.to_dict()['maps']}
        localized = {}
        for flag in rinv.flags:
            ring = rinv.value(flag)
            if flag.length != 0 or ring.rank != 1:
                continue
            loc = localized_ring(ring)
            dims = _ring_dims(loc, lo, hi)
            localized[flag.label] = {'ring': loc.label, 'dims': {str(t): d for t, d in dims.items()}}
            rows.extend(["Rinv_localized", flag.label, loc.label, t, d] for t, d in dims.items())
        payload['localized_Rinv'] = localized
        summary = "\n".join(f"{flag.label}: {ra.label(flag)} | {rinv.label(flag)} | {rtw.label(flag)}"
                            for flag in rinv.flags)
        return CommandResult(payload, summary, ["diagram", "flag", "ring", "degree", "dim"], rows)

    def get_description(self) -> str:
        return "환 다이어그램 표"


# ----- 가군 -----

class CheckQceCommand(Command):
    name = "check-qce"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        module = _input(config, ctx, _level(config))
        report = check_qce(module)
        verdicts = {}
        for flag in ctx.flags:
            failed = any(f['flag'] == flag.label for f in report.failures)
            verdicts[flag.label] = "fail" if failed else "ok"
        payload = report.to_dict()
        payload.update({'module': module.name, 'flags': verdicts})
        summary = f"{module.name}: qce={'성립' if report.holds else '실패'}, 경고 {len(report.warnings)}개"
        return CommandResult(payload, summary, ["flag", "verdict"], sorted(verdicts.items()))

    def get_description(self) -> str:
        return "준연접/확장 검사"


class NormalCommand(Command):
    """작용이 붙은 깃발 값마다 정규성, N 수준이면 여단위와 고유공간 법칙"""
    name = "normal"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        module = _input(config, ctx, _level(config, "N"))
        flags = {}
        rows = []
        for flag in ctx.flags:
            value = module.value(flag)
            if value.sigma is None:
                continue
            report = is_normal_module(value)
            entry = report.to_dict()
            if module.level == Level.N:
                entry['eigenspace_failure'] = eigenspace_law(module, flag)
            flags[flag.label] = entry
            rows.append([flag.label, report.holds])
        payload: Dict = {'module': module.name, 'level': module.level.value, 'flags': flags}
        if module.level == Level.N:
            payload['counit'] = counit_check(module).to_dict()
        normal = all(entry['holds'] for entry in flags.values())
        summary = f"{module.name}: 정규={normal} (작용 깃발 {len(flags)}개)"
        return CommandResult(payload, summary, ["flag", "normal"], rows)

    def get_description(self) -> str:
        return "정규성 판정"


# ----- 호몰로지 대수 -----

class ResolveCommand(Command):
    name = "resolve"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        module = _input(config, ctx, _level(config))
        resolution = injective_resolution(module, config.get('max_len'))
        payload = resolution.to_dict()
        payload['exact'] = resolution.check_exactness() is None
        rows = [[stage, repr(spec)] for stage, specs in enumerate(resolution.specs) for spec in specs]
        summary = f"{module.name}: 길이 {resolution.length}, 항별 단사 가군 수 {[len(s) for s in resolution.specs]}"
        return CommandResult(payload, summary, ["stage", "injective"], rows)

    def get_description(self) -> str:
        return "단사 분해"


def _table_rows(entries: Dict[Tuple[int, int], int]) -> List[List[int]]:
    return [[s, t, d] for (s, t), d in sorted(entries.items())]


class ExtCommand(Command):
    name = "ext"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        level = _level(config)
        x = _operand(_required(config, 'X', '--X'), config, ctx, level)
        y = _operand(_required(config, 'Y', '--Y'), config, ctx, level)
        table = ext(x, y, config.window, jobs=config.jobs, max_len=config.get('max_len'))
        payload = table.to_dict()
        payload.update({'X': x.name, 'Y': y.name})
        summary = f"Ext({x.name}, {y.name}): 줄 {table.lines()}, t−s 총합 {table.totals()}"
        return CommandResult(payload, summary, ["s", "t", "dim"], _table_rows(table.entries))

    def get_description(self) -> str:
        return "Ext 표"


class E2Command(Command):
    name = "e2"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        level = _level(config)
        x_text = _required(config, 'X', '--X')
        y_text = _required(config, 'Y', '--Y')
        if x_text.endswith('.json') or y_text.endswith('.json'):
            x = _operand(x_text, config, ctx, level)
            y = _operand(y_text, config, ctx, level)
            page = E2Page(ext(x, y, config.window, jobs=config.jobs), x.name, y.name)
        else:
            page = e2_page(parse_cell(x_text), parse_cell(y_text), ctx, config.window, config.jobs, level)
        report = degeneracy_report(page)
        payload = page.to_dict()
        payload['degeneracy'] = report.to_dict()
        summary = (f"E₂({page.source}, {page.target}): E_{page.collapse_at} 붕괴, "
                   f"{'E₂=E∞' if report.collapsed else '모호한 t−s ' + str(report.ambiguous)}, "
                   f"총합 {report.totals}")
        return CommandResult(payload, summary, ["s", "t", "dim"], _table_rows(page.table.entries))

    def get_description(self) -> str:
        return "애덤스 E₂ 페이지"


# ----- 셀 -----

class CellsCommand(Command):
    """카탈로그 목록 또는 셀 하나의 π^𝒜, 고정점 분해, 수반 현수"""
    name = "cells"

    def execute(self, config: Config) -> CommandResult:
        ctx = _context(config)
        if config.get('list'):
            names = catalog_names(ctx)
            return CommandResult({'group': ctx.group, 'cells': names}, "\n".join(names),
                                 ["cell"], [[n] for n in names])
        level = _level(config)
        cell = parse_cell(config.get('cell') or "sphere")
        module = pi_A(cell, ctx, config.window, level)
        payload: Dict = {
            'cell': cell.label,
            'level': level.value,
            'values': module.labels(),
            'support': [K.label for K in module.support()],
            'geometric_support': [K.label for K in geometric_support(module)],
        }
        if config.get('dump'):
            payload['module'] = module.to_dict()
        fixed = config.get('fixed')
        if fixed:
            payload['fixed_points'] = fixed_point_decomposition(ctx.poset.get(fixed), ctx.poset).to_dict()
        if config.get('adjoint'):
            payload['adjoint'] = adjoint_check(module).to_dict()
            payload['adjoint']['suspended'] = suspend_adjoint(module).labels()
        summary = f"{cell.label} @ {level.value}: 기하적 지지 {payload['geometric_support']}"
        return CommandResult(payload, summary, ["flag", "value"], sorted(module.labels().items()))

    def get_description(self) -> str:
        return "셀 카탈로그"


class ChangeGroupsCommand(Command):
    """같은 랭크 포함 사이의 θ_*, θ^*, θ^!"""
    name = "change-groups"

    def execute(self, config: Config) -> CommandResult:
        which = config.get('which') or "theta_star"
        if which not in FUNCTORS:
            raise ConfigError(f"--which 는 {', '.join(FUNCTORS)} 중 하나")
        source = _context(config)
        target = _context(config, _required(config, 'target', '--target'))
        module = _input(config, source, Level.G)
        result = change_groups(module, target, which)
        dims = dimension_table(result)
        payload: Dict = {
            'source': source.group,
            'target': target.group,
            'functor': which,
            'module': module.name,
            'values': result.labels(),
            'dims': {label: {str(t): d for t, d in row.items()} for label, row in dims.items()},
        }
        if which != "theta_star":
            payload['shriek_star_mismatches'] = [list(x) for x in shriek_star_agreement(module, target)]
        rows = [[label, t, d] for label, row in sorted(dims.items()) for t, d in sorted(row.items())]
        summary = f"{which}: {source.group} → {target.group}, {result.name}"
        return CommandResult(payload, summary, ["flag", "degree", "dim"], rows)

    def get_description(self) -> str:
        return "군 변경"


class SelfTestCommand(Command):
    """수용 검사 모음 (실패하면 종료 코드 2)"""
    name = "selftest"

    def execute(self, config: Config) -> CommandResult:
        only = config.get('only')
        report = run_selftest(config, [s.strip() for s in only.split(',')] if only else None)
        rows = [[check['name'], check['passed']] for check in report['checks']]
        passed = sum(1 for check in report['checks'] if check['passed'])
        summary = f"자체 검사 {passed}/{len(rows)} 통과"
        return CommandResult(report, summary, ["check", "passed"], rows, exit_code=0 if report['passed'] else 2)

    def get_description(self) -> str:
        return "자체 검사"


ALL_COMMANDS = (PosetCommand, StructureCommand, RingsCommand, CheckQceCommand, NormalCommand,
                ResolveCommand, ExtCommand, E2Command, CellsCommand, ChangeGroupsCommand, SelfTestCommand)


def default_manager() -> CommandManager:
    return CommandManager([cls() for cls in ALL_COMMANDS])
