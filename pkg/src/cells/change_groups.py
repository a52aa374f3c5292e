"""
ToralKit 군 변경 함자 (같은 랭크)
θ_* 는 제한, θ^* 는 공유도, θ^! 는 유도를 모델한다
"""

from typing import Dict, List, Tuple

from ..core.errors import ModuleError, UnsupportedError
from ..core.log import log
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, ModuleMap
from ..diagram.context import Level, ModelContext
from ..diagram.descent import psi, theta_star
from ..diagram.diagram_module import DiagramModule

# (G, H): H ≤ G
SUPPORTED_PAIRS = (("O2", "Circle"), ("SO3", "Circle"), ("SO3", "O2"))
FUNCTORS = ("theta_star", "theta_upper_star", "theta_shriek")


def _check_pair(big: ModelContext, small: ModelContext):
    if big.spec.rank != small.spec.rank:
        raise UnsupportedError(f"랭크가 다른 군 변경은 지원하지 않음: {small.group} ≤ {big.group}")
    if big.group != small.group and (big.group, small.group) not in SUPPORTED_PAIRS:
        raise UnsupportedError(f"지원하지 않는 포함: {small.group} ≤ {big.group}")
    if big.poset.truncation_N != small.poset.truncation_N:
        raise UnsupportedError("두 문맥의 절단 N 이 다름")


def _rehome(n: DiagramModule, target: ModelContext, level: Level, name: str) -> DiagramModule:
    """같은 레이블의 깃발로 값을 옮기고 대상 수준의 환과 작용에 맞춘다"""
    source = n.context
    values: Dict = {}
    for flag in target.flags:
        v = n.value(source.get_flag(flag.label))
        ring = target.ring(level, flag)
        if v.ring != ring:
            v = v.over_ring(ring)
        if target.acts(level, flag):
            if v.sigma is None:
                raise ModuleError(f"{flag.label}: 대상 수준에 필요한 작용 데이터가 없음")
            if v.step and v.chi != target.chi(level, flag):
                raise ModuleError(f"{flag.label}: 작용 부호 불일치")
        elif v.sigma is not None:
            v = v.without_sigma()
        values[flag] = v
    maps = {}
    for sub, flag in target.edges():
        beta = n.map(source.get_flag(sub.label), source.get_flag(flag.label))
        maps[(sub, flag)] = ModuleMap(values[sub], values[flag], beta.mats)
    return DiagramModule(target, level, values, maps, name)


def _doubled(value: GradedModule, chi: int, swap_first: bool) -> GradedModule:
    """ℚ[V] 위로 올린 값 X ⊕ X^χ (두 번째 벌은 생성원이 χ 배), σ 는 두 벌을 맞바꿈"""
    n = {t: value.dim(t) for t in range(value.lo, value.hi + 1)}
    dims = {t: 2 * d for t, d in n.items()}
    gen = None
    if value.step:
        gen = {}
        for t in range(value.lo + value.step, value.hi + 1):
            g = value.gen_at(t)
            blocks = [g * chi, g] if swap_first else [g, g * chi]
            gen[t] = linalg.block_diag(blocks)
    sigma = {}
    for t, d in n.items():
        m = linalg.zeros(2 * d, 2 * d)
        m[:d, d:] = linalg.eye(d)
        m[d:, :d] = linalg.eye(d)
        sigma[t] = m
    return GradedModule(value.ring, value.lo, value.hi, dims, gen, sigma, chi)


def _lift_weyl(n: DiagramModule, target: ModelContext, induce: bool) -> DiagramModule:
    """λ^* (공유도: 함수 f(1), f(σ) 순) 또는 λ^! (유도: σ⊗x, 1⊗x 순)"""
    source = n.context
    if source.weyl_order == target.weyl_order:
        return _rehome(n, target, Level.N, n.name)
    if source.weyl_order != 1 or target.weyl_order != 2:
        raise UnsupportedError(f"바일 군 {source.weyl_order} → {target.weyl_order} 올림은 지원하지 않음")
    values = {}
    for flag in target.flags:
        v = n.value(source.get_flag(flag.label))
        if v.sigma is not None:
            v = v.without_sigma()
        ring = target.ring(Level.N, flag)
        if v.ring != ring:
            v = v.over_ring(ring)
        values[flag] = _doubled(v, target.chi(Level.N, flag), swap_first=induce)
    maps = {}
    for sub, flag in target.edges():
        beta = n.map(source.get_flag(sub.label), source.get_flag(flag.label))
        lo, hi = values[sub].lo, values[sub].hi
        mats = {t: linalg.block_diag([beta.matrix(t), beta.matrix(t)]) for t in range(lo, hi + 1)}
        maps[(sub, flag)] = ModuleMap(values[sub], values[flag], mats)
    label = "ind" if induce else "coind"
    return DiagramModule(target, Level.N, values, maps, f"{label}({n.name})")


def change_groups(m: DiagramModule, target: ModelContext, which: str = "theta_star") -> DiagramModule:
    """같은 랭크 포함 H ≤ G 의 군 변경

    theta_star: G-가군 → H-가군 (m 은 G 문맥, target 은 H 문맥)
    theta_upper_star, theta_shriek: H-가군 → G-가군 (Σ^{LS/LT} 는 같은 랭크에서 자명)
    """
    if which not in FUNCTORS:
        raise UnsupportedError(f"알 수 없는 군 변경 함자: {which} (가능: {', '.join(FUNCTORS)})")
    if m.level != Level.G:
        raise ModuleError("군 변경은 G 수준 가군에 적용")
    source = m.context
    if which == "theta_star":
        _check_pair(source, target)
        result = _rehome(theta_star(m), target, Level.G, f"θ_*({m.name})")
    else:
        _check_pair(target, source)
        lifted = _lift_weyl(theta_star(m), target, induce=(which == "theta_shriek"))
        result = psi(lifted)
        result.name = f"{'θ^!' if which == 'theta_shriek' else 'θ^*'}({m.name})"
    log("격자", f"{which}: {source.group} → {target.group} ({m.name})", level=2)
    return result


def dimension_table(m: DiagramModule) -> Dict[str, Dict[int, int]]:
    """깃발 레이블별 차수 차원 (문맥이 다른 가군 비교용)"""
    table = {}
    for flag in m.context.flags:
        v = m.value(flag)
        table[flag.label] = {t: v.dim(t) for t in range(v.lo, v.hi + 1)}
    return table


def compare_dimensions(a: DiagramModule, b: DiagramModule) -> List[Tuple[str, int]]:
    """공통 창에서 차원이 다른 (깃발, 차수) 목록"""
    left, right = dimension_table(a), dimension_table(b)
    mismatches = []
    for label, dims in left.items():
        other = right.get(label)
        if other is None:
            mismatches.append((label, 0))
            continue
        for t, d in dims.items():
            if t in other and other[t] != d:
                mismatches.append((label, t))
    return mismatches


def shriek_star_agreement(m: DiagramModule, target: ModelContext) -> List[Tuple[str, int]]:
    """θ^! 과 θ^* 가 차수별로 같은지 (같은 랭크)"""
    return compare_dimensions(change_groups(m, target, "theta_upper_star"),
                              change_groups(m, target, "theta_shriek"))
