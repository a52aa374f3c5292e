"""
ToralKit 자체 검사
수용 기준을 시드 고정으로 돌려 결정적인 보고서를 만든다
"""

from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import Config
from ..core.errors import ToralKitError
from ..core.log import log, warn
from ..gralg import (C_RING, L_RING, GradedModule, ModuleMap, RingAction, Summand, cokernel, direct_sum,
                     hom_space, invariants, is_normal_module, kernel, localized_ring, molien_series,
                     pushout_extension, solomon_check)
from ..lattice import (GroupSpec, IndexKind, MatrixGroup, build_poset, check_transport_laws,
                       component_structure, wgk_check)
from ..lattice.poset import Flag
from ..diagram import (Level, ModelContext, DiagramModule, build_Rinv, build_context, check_F_continuity,
                       check_qce, corpus, counit_check, psi, theta_star, unit_check)
from ..homalg import injective_resolution, localization_sequence_check
from ..cells import (adjoint_check, adjoint_shift, catalog_names, compare_dimensions, parse_cell, pi_A,
                     suspend_adjoint)
from ..adams import degeneracy_report, e2_page, unstable_degrees

Check = Callable[[Config], Tuple[bool, Dict]]

# 수용 기준에 고정된 매개변수 (--count 는 모음 크기만 바꾼다)
ACCEPTANCE: Dict[str, Dict] = {
    'descent': {'group': "SO3", 'count': 200, 'N': 4, 'window': (-24, 4)},
    'normality': {'group': "SO3", 'count': 100, 'corpus': 8, 'N': 4, 'window': (-24, 4)},
    'injective_dimension': {'group': "SO3", 'count': 100, 'N': 8, 'window': (-24, 4)},
    'e2_sphere': {'group': "SO3", 'N': 8, 'larger_N': 12, 'window': (-16, 8)},
}


def acceptance(name: str, config: Config) -> Dict:
    """검사의 고정 매개변수 (설정의 count 만 모음 크기를 덮어씀)"""
    params = dict(ACCEPTANCE[name])
    override = config.get('count')
    if override:
        for key in ('count', 'corpus'):
            if key in params:
                params[key] = min(params[key], int(override)) if key == 'corpus' else int(override)
    return params


def _context(config: Config, group: str = "") -> ModelContext:
    return build_context(group or config.group, config.N)


def _series(codegrees: Tuple[int, ...], bound: int) -> List[int]:
    """∏ 1/(1 − t^d) 의 계수"""
    coeffs = [1] + [0] * bound
    for d in codegrees:
        for k in range(d, bound + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def check_molien(config: Config) -> Tuple[bool, Dict]:
    sign = RingAction.sign()
    circle = invariants(C_RING, sign, 40)
    circle_molien = [int(x) for x in molien_series(sign, 40)]
    su3 = GroupSpec("SU3")
    action = RingAction(MatrixGroup(su3.rank, su3.weyl_generators))
    su3_molien = [int(x) for x in molien_series(action, 30)]
    details = {
        'sign_invariants': circle.dims == circle_molien == _series((4,), 40),
        'sign_generated': circle.check_generated(),
        'su3_molien': su3_molien == _series((4, 6), 30),
    }
    return all(details.values()), details


def check_rings(config: Config) -> Tuple[bool, Dict]:
    """SO3, N=1: R_inv(T⊃1) = ℚ[c,c⁻¹] 이지만 ℰ⁻¹R_inv(1) = ℚ[d,d⁻¹]"""
    spec = GroupSpec("SO3")
    poset = build_poset(spec, 1)
    cs = component_structure(spec, poset, spec.rank)
    rinv = build_Rinv(poset, cs)
    one = poset.get("C1")
    top = rinv.value(Flag([poset.torus, one]))
    loc = localized_ring(rinv.value(Flag([one])))
    details = {
        'Rinv(T>C1)': top.label,
        'localized Rinv(C1)': loc.label,
        'dim_codegree_2': [top.dim(-2), loc.dim(-2)],
    }
    return top.dim(-2) == 1 and loc.dim(-2) == 0, details


def check_descent(config: Config) -> Tuple[bool, Dict]:
    params = acceptance('descent', config)
    ctx = build_context(params['group'], params['N'])
    failures: Dict[str, List[str]] = {'unit': [], 'theta_qce': [], 'theta_continuity': [], 'psi_qce': []}
    for m in corpus(ctx, Level.G, params['count'], config.seed, params['window']):
        if not unit_check(m).holds:
            failures['unit'].append(m.name)
        n = theta_star(m)
        if not check_qce(n).holds:
            failures['theta_qce'].append(m.name)
        if not check_F_continuity(n).holds:
            failures['theta_continuity'].append(m.name)
        if not check_qce(psi(n)).holds:
            failures['psi_qce'].append(m.name)
    return not any(failures.values()), failures


def _equivariant(ring, summands: List[Summand], lo: int, hi: int) -> GradedModule:
    return GradedModule.from_summands(ring, summands, lo, hi, equivariant=True, chi=-1)


def _random_map(source: GradedModule, target: GradedModule, rng: np.random.Generator) -> Optional[ModuleMap]:
    """차수 0 동변 사상의 정수 계수 무작위 결합 (Hom 이 0 이면 None)"""
    space = hom_space(source, target, 0)
    if not space.dim:
        return None
    coeffs = [int(x) for x in rng.integers(-2, 3, size=space.dim)]
    if not any(coeffs):
        coeffs[0] = 1
    return space.combination(coeffs)


def normality_closure(values: List[GradedModule], count: int, seed: int) -> Dict:
    """
    정규 가군 사이 무작위 사상으로 닫힘 성질 확인
    인스턴스마다 직합, f 의 핵과 여핵, 단사 ι 를 f 로 밀어낸 확장을 판정한다
    """
    pools: Dict[Tuple, List[GradedModule]] = {}
    for v in values:
        pools.setdefault((v.ring.label, v.chi), []).append(v)
    pool = max(pools.values(), key=len, default=[])
    tried = {'sum': 0, 'kernel': 0, 'cokernel': 0, 'extension': 0}
    failures: List[str] = []
    rng = np.random.default_rng(seed)

    def record(kind: str, module: GradedModule, i: int):
        tried[kind] += 1
        if not is_normal_module(module).holds:
            failures.append(f"{kind}{i}")

    for i in range(count if pool else 0):
        a, b, c = (pool[int(j)] for j in rng.integers(len(pool), size=3))
        record('sum', direct_sum([a, b])[0], i)
        f = _random_map(a, b, rng)
        if f is None:
            continue
        record('kernel', kernel(f)[0], i)
        record('cokernel', cokernel(f)[0], i)
        inclusion = _random_map(a, c, rng)
        if inclusion is None or not inclusion.is_injective():
            continue
        record('extension', pushout_extension(inclusion, f)[0], i)
    log("검사", f"정규성 닫힘: {tried}", level=2)
    return {'tried': tried, 'failures': failures}


def check_normality(config: Config) -> Tuple[bool, Dict]:
    lo, hi = -12, 4
    ideal = _equivariant(C_RING, [Summand.free(-2, 1)], lo, hi)
    poly = _equivariant(C_RING, [Summand.free(0)], lo, hi)
    laurent = _equivariant(L_RING, [Summand.laurent(0)], lo, hi)
    details: Dict = {
        'ideal': is_normal_module(ideal).holds,
        'polynomial': is_normal_module(poly).holds,
        'laurent': is_normal_module(laurent).holds,
    }
    # 제한된 가군의 값들과 그 사이 무작위 사상
    params = acceptance('normality', config)
    ctx = build_context(params['group'], params['N'])
    values = []
    for m in corpus(ctx, Level.G, params['corpus'], config.seed, params['window']):
        n = theta_star(m)
        values.extend(n.value(f) for f in ctx.singletons() if n.value(f).sigma is not None)
    details['value_failures'] = [i for i, v in enumerate(values) if not is_normal_module(v).holds]
    closure = normality_closure(values, params['count'], config.seed)
    details['closure'] = closure['tried']
    details['closure_failures'] = closure['failures']
    ok = not details['ideal'] and details['polynomial'] and details['laurent'] \
        and not details['value_failures'] and not closure['failures']
    return ok, details


def check_adjoint(config: Config) -> Tuple[bool, Dict]:
    solomon = {name: solomon_check(GroupSpec(name), 20).holds for name in ("SO3", "SU3")}
    ctx = _context(config, "SO3")
    sphere = pi_A(parse_cell("sphere"), ctx, config.window)
    suspended = suspend_adjoint(sphere)
    shift = adjoint_shift(sphere)
    moved = all(suspended.value(f).dim(t + shift) == sphere.value(f).dim(t)
                for f in ctx.flags for t in range(sphere.value(f).lo, sphere.value(f).hi + 1))
    report = adjoint_check(sphere)
    details = {'solomon': solomon, 'shift': shift, 'shifted_dims': moved, 'adjoint': report.holds}
    return all(solomon.values()) and shift == 2 and moved and report.holds, details


def check_injective_dimension(config: Config) -> Tuple[bool, Dict]:
    params = acceptance('injective_dimension', config)
    ctx = build_context(params['group'], params['N'])
    lengths = []
    for m in corpus(ctx, Level.G, params['count'], config.seed, params['window']):
        lengths.append(injective_resolution(m).length)
    circle = _context(config, "Circle")
    free = injective_resolution(pi_A(parse_cell("cell:C1"), circle, config.window))
    details = {'max_length': max(lengths, default=0), 'rank': ctx.spec.rank, 'free_cell_length': free.length}
    return details['max_length'] <= ctx.spec.rank and free.length == 1, details


def check_localization_sequence(config: Config) -> Tuple[bool, Dict]:
    sphere = parse_cell("sphere")
    details = {}
    for group in ("Circle", "SO3"):
        ctx = _context(config, group)
        for level in (Level.N, Level.G):
            resolution = injective_resolution(pi_A(sphere, ctx, config.window, level))
            details[f"{group}/{level.value}"] = localization_sequence_check(resolution)
    return all(r['holds'] for r in details.values()), details


def check_e2_sphere(config: Config) -> Tuple[bool, Dict]:
    params = acceptance('e2_sphere', config)
    sphere = parse_cell("sphere")
    pages = {}
    for N in (params['N'], params['larger_N']):
        ctx = build_context(params['group'], N)
        pages[N] = e2_page(sphere, sphere, ctx, params['window'], config.jobs)
    page, larger = pages[params['N']], pages[params['larger_N']]
    report = degeneracy_report(page)
    unstable = unstable_degrees(page, larger)
    details = {
        'totals': {str(k): v for k, v in sorted(page.totals.items())},
        'lines': page.table.lines(),
        'stable': 0 not in unstable,
        'unstable': unstable,
        'collapsed': report.collapsed,
    }
    ok = page.totals.get(0) == 1 and set(page.table.lines()) <= {0, 1} and details['stable']
    return ok, details


def check_functor_squares(config: Config) -> Tuple[bool, Dict]:
    """θ_*∘π_G = π_N∘res, π_G∘coind = Ψ∘π_N, 자유 멱등 = coind:T"""
    failures: List[str] = []
    for group in ("SO3", "O2"):
        ctx = _context(config, group)
        for name in catalog_names(ctx):
            cell = parse_cell(name)
            if name.startswith("coind:"):
                continue
            restricted = theta_star(pi_A(cell, ctx, config.window, Level.G))
            if compare_dimensions(restricted, pi_A(cell, ctx, config.window, Level.N)):
                failures.append(f"{group} res {name}")
            coinduced = pi_A(parse_cell(f"coind:N:{name}"), ctx, config.window, Level.G)
            expected = psi(pi_A(cell, ctx, config.window, Level.N))
            if compare_dimensions(coinduced, expected) or not check_qce(coinduced).holds:
                failures.append(f"{group} coind {name}")
        for K in ctx.finite_subgroups():
            free = pi_A(parse_cell(f"free:idem:{K.label}"), ctx, config.window)
            closed = pi_A(parse_cell(f"coind:T:idem:{K.label}"), ctx, config.window)
            if compare_dimensions(free, closed):
                failures.append(f"{group} free/coind {K.label}")
    return not failures, {'failures': failures}


def _torsion_at_trivial(ctx: ModelContext, summands: List[Summand], name: str) -> DiagramModule:
    one = ctx.poset.get("C1")
    single = Flag([one])
    lo, hi = -8, 4
    value = GradedModule.from_summands(ctx.ring(Level.N, single), summands, lo, hi,
                                       equivariant=True, chi=ctx.chi(Level.N, single))
    return DiagramModule.assemble(ctx, Level.N, None, {one: value}, window=(lo, hi), name=name)


def check_counit_control(config: Config) -> Tuple[bool, Dict]:
    """ℚ ⊕ Σ²ℚ̃ 은 G에서 오지 않고, ℚ[c]/c² 는 온다"""
    ctx = _context(config, "SO3")
    asymmetric = _torsion_at_trivial(ctx, [Summand.torsion(0, 1), Summand.torsion(2, 1, 1)], "asymmetric")
    symmetric = _torsion_at_trivial(ctx, [Summand.torsion(0, 2)], "symmetric")
    details = {'asymmetric': counit_check(asymmetric).to_dict(), 'symmetric': counit_check(symmetric).to_dict()}
    return not details['asymmetric']['holds'] and details['symmetric']['holds'], details


def check_transport(config: Config) -> Tuple[bool, Dict]:
    spec = GroupSpec("SO3")
    poset = build_poset(spec, config.N)
    by_flags = component_structure(spec, poset, spec.rank)
    by_subgroups = component_structure(spec, poset, spec.rank, IndexKind.SUBGROUPS)
    laws = {
        'flags': check_transport_laws(poset, by_flags.objects, by_flags.inclusion)['holds'],
        'subgroups': check_transport_laws(poset, by_subgroups.objects, by_subgroups.inclusion)['holds'],
    }
    details = {
        'laws': laws,
        'flag_structure_decreasing': by_flags.is_decreasing,
        'subgroup_structure_decreasing': by_subgroups.is_decreasing,
        'normal': by_flags.is_normal,
        'weyl_of_weyl': wgk_check(poset)['holds'],
    }
    ok = all(laws.values()) and by_flags.is_decreasing and not by_subgroups.is_decreasing \
        and by_flags.is_normal and details['weyl_of_weyl']
    return ok, details


CHECKS: List[Tuple[str, Check]] = [
    ("molien", check_molien),
    ("rings", check_rings),
    ("descent", check_descent),
    ("normality", check_normality),
    ("adjoint", check_adjoint),
    ("injective_dimension", check_injective_dimension),
    ("localization_sequence", check_localization_sequence),
    ("e2_sphere", check_e2_sphere),
    ("functor_squares", check_functor_squares),
    ("counit_control", check_counit_control),
    ("transport", check_transport),
]


def run_selftest(config: Config, only: List[str] = None) -> Dict:
    """검사 목록 실행 (검사 중 오류는 실패로 기록)"""
    results = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        try:
            passed, details = check(config)
        except ToralKitError as e:
            passed, details = False, {'error': f"{type(e).__name__}: {e}"}
        if passed:
            log("검사", f"✅ {name}")
        else:
            warn("검사", f"❌ {name}")
        results.append({'name': name, 'passed': bool(passed), 'details': details})
    return {
        'group': config.group,
        'N': config.N,
        'seed': config.seed,
        'window': list(config.window),
        'count': config.get('count'),
        'parameters': {name: {k: list(v) if isinstance(v, tuple) else v
                              for k, v in acceptance(name, config).items()} for name in ACCEPTANCE},
        'checks': results,
        'passed': all(r['passed'] for r in results),
    }
