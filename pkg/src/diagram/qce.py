"""
ToralKit 준연접/확장 검사
깃발 값이 끝 항(준연접) 또는 첫 항(확장)의 값에서 기저 변환으로 얻어지는지,
그리고 토러스 값의 분모가 절단 안에서 고르게 유계인지(F-연속성) 확인한다
"""

from typing import Dict, List, Optional

from sympy import Matrix

from ..core.log import log, warn
from ..gralg import linalg
from ..gralg.graded_module import ModuleMap
from ..gralg.module_ops import BaseChange, localized_ring
from ..lattice.poset import Flag
from .context import Level
from .diagram_module import DiagramModule


class QceReport:
    """검사 결과와 실패 증거"""

    def __init__(self, quasi_coherent: bool, extended: bool, failures: List[Dict],
                 warnings: Optional[List[Dict]] = None, f_continuous: Optional[bool] = None,
                 continuity: Optional['ContinuityReport'] = None):
        self.quasi_coherent = quasi_coherent
        self.extended = extended
        self.failures = failures
        self.warnings = warnings or []
        self.continuity = continuity
        self.f_continuous = f_continuous if f_continuous is not None else \
            (continuity.holds if continuity is not None else True)

    @property
    def holds(self) -> bool:
        return self.quasi_coherent and self.extended

    def recheck(self, module: DiagramModule) -> bool:
        """기록된 실패가 다시 계산해도 실패하는지"""
        for failure in self.failures:
            flag = module.context.get_flag(failure['flag'])
            sub = module.context.get_flag(failure['sub'])
            verdict = _compare(module, sub, flag)
            if verdict is None or verdict['degree'] != failure['degree']:
                return False
        return True

    def to_dict(self) -> Dict:
        data = {
            'quasi_coherent': self.quasi_coherent,
            'extended': self.extended,
            'f_continuous': self.f_continuous,
            'failures': self.failures,
            'warnings': self.warnings,
        }
        if self.continuity is not None:
            data['continuity'] = self.continuity.to_dict()
        return data

    def __repr__(self):
        return f"QceReport(qc={self.quasi_coherent}, ext={self.extended}, F={self.f_continuous})"


def _compare(module: DiagramModule, sub: Flag, flag: Flag) -> Optional[Dict]:
    """R(E) ⊗_{R(sub)} M(sub) → M(E) 가 동형이 아닌 첫 차수 (동형이면 None)"""
    ctx = module.context
    value = module.value(flag)
    rmap = ctx.ring_map(module.level, sub, flag)
    bc = BaseChange(module.value(sub), rmap, equivariant=False)
    if value.ring != rmap.target:
        for t in range(value.lo, value.hi + 1):
            if bc.result.dim(t) != value.dim(t):
                return {'degree': t, 'dims': [bc.result.dim(t), value.dim(t)], 'kind': 'ring'}
        return None
    extended = bc.extend_map(module.map(sub, flag))
    t = extended.failure_degree()
    if t is None:
        return None
    m = extended.matrix(t)
    return {'degree': t, 'dims': [m.cols, m.rows], 'kind': 'map'}


def _conditions(module: DiagramModule, flag: Flag) -> List[tuple]:
    """(조건 이름, 부분깃발) 목록"""
    present = set(module.context.flags)
    last, first = Flag([flag.last]), Flag([flag.first])
    result = [('quasi_coherent', last), ('extended', first)]
    if flag.length >= 2:
        # 길이 1 부분깃발에서 오는 사상도 동형이어야 함
        for sub in flag.subflags():
            if sub.length == 1 and sub.last == flag.last and sub in present:
                result.append(('quasi_coherent', sub))
    return result


def check_qce(module: DiagramModule) -> QceReport:
    """깃발마다 끝 항/첫 항 기저 변환 비교"""
    ctx = module.context
    failures: List[Dict] = []
    warnings: List[Dict] = []
    for flag in ctx.flags:
        if flag.length < 1:
            continue
        for condition, sub in _conditions(module, flag):
            verdict = _compare(module, sub, flag)
            if verdict is not None:
                failures.append({'flag': flag.label, 'sub': sub.label, 'condition': condition,
                                 'degree': verdict['degree'], 'dims': verdict['dims'], 'kind': verdict['kind']})
        if module.level == Level.G:
            last = Flag([flag.last])
            base = ctx.ring(Level.G, last)
            if base.rank == 1 and localized_ring(base) != ctx.ring(Level.G, flag):
                warnings.append({'flag': flag.label,
                                 'localized': localized_ring(base).label,
                                 'value': ctx.ring(Level.G, flag).label})
    quasi = not any(f['condition'] == 'quasi_coherent' for f in failures)
    extended = not any(f['condition'] == 'extended' for f in failures)
    continuity = check_F_continuity(module)
    for f in failures:
        log("격자", f"qce 실패 {f['sub']} → {f['flag']} ({f['condition']}) 차수 {f['degree']}", level=2)
    for w in warnings:
        log("환", f"{w['flag']}: {w['value']} ≠ {w['localized']} (R_inv는 국소화가 아님)", level=2)
    return QceReport(quasi, extended, failures, warnings, continuity=continuity)


class ContinuityReport:
    """토러스 값 원소마다 필요한 분모 지수"""

    def __init__(self, bounds: Dict[str, int], witnesses: List[Dict]):
        self.bounds = bounds
        self.witnesses = witnesses

    @property
    def holds(self) -> bool:
        return not self.witnesses

    @property
    def uniform_bound(self) -> int:
        return max(self.bounds.values(), default=0)

    def to_dict(self) -> Dict:
        return {'holds': self.holds, 'uniform_bound': self.uniform_bound,
                'bounds': dict(sorted(self.bounds.items())), 'witnesses': self.witnesses}


def _in_image(beta: ModuleMap, vec: Matrix, t: int) -> bool:
    m = beta.matrix(t)
    if linalg.is_zero(vec):
        return True
    if m.cols == 0:
        return False
    return linalg.is_solvable(m, vec)


def check_F_continuity(module: DiagramModule) -> ContinuityReport:
    """M(T) → M(T⊃K) 의 상이 c^{-j}·β(M(K)) 안에 들어가는 최소 j 찾기

    절단이 유한하므로 부분군 전체에 걸친 최대 j가 곧 균일한 분모 지수다.
    """
    ctx = module.context
    top = ctx.torus_flag()
    torus = module.value(top)
    bounds: Dict[str, int] = {}
    witnesses: List[Dict] = []
    for K in ctx.finite_subgroups():
        flag = ctx.localized_flag(K)
        if flag not in module.values:
            continue
        single = Flag([K])
        value = module.value(flag)
        beta = module.map(single, flag)
        e = module.map(top, flag)
        s = value.step
        floor = min(module.value(single).lo, value.lo) - s
        worst = 0
        for t in range(torus.lo, torus.hi + 1):
            images = e.matrix(t)
            for i in range(images.cols):
                vec = images[:, i]
                j, found = 0, False
                while t - s * j >= floor:
                    if _in_image(beta, value.down(vec, t, j), t - s * j):
                        found = True
                        break
                    if s == 0:
                        break
                    j += 1
                if not found:
                    witnesses.append({'flag': flag.label, 'degree': t, 'index': i})
                else:
                    worst = max(worst, j)
        bounds[flag.label] = worst
    if witnesses:
        warn("격자", f"F-연속성 실패: {witnesses[0]['flag']} 차수 {witnesses[0]['degree']}")
    return ContinuityReport(bounds, witnesses)
