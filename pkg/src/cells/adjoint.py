"""
ToralKit 수반 표현 현수
H^G_*(X ∧ S^{LG}) = H^N_*(X ∧ S^{LT}): 차수 dim G − dim T 이동과 δκ 곱 비교
"""

from typing import Dict, List, Optional

from ..core.errors import UnsupportedError
from ..core.log import log
from ..gralg import linalg
from ..gralg.module_ops import BaseChange
from ..gralg.solomon import SolomonReport, solomon_check
from ..diagram.context import Level
from ..diagram.descent import descent_ring_map
from ..diagram.diagram_module import DiagramModule


class AdjointReport:
    """현수 검사 결과"""

    def __init__(self, group: str, shift: int, solomon: Optional[SolomonReport],
                 failures: List[Dict]):
        self.group = group
        self.shift = shift
        self.solomon = solomon
        self.failures = failures

    @property
    def holds(self) -> bool:
        return not self.failures and (self.solomon is None or self.solomon.holds)

    def to_dict(self) -> Dict:
        return {
            'group': self.group,
            'shift': self.shift,
            'solomon': self.solomon.to_dict() if self.solomon else None,
            'failures': self.failures,
            'holds': self.holds,
        }


def adjoint_shift(module: DiagramModule) -> int:
    spec = module.context.spec
    return spec.dim - spec.rank


def suspend_adjoint(module: DiagramModule) -> DiagramModule:
    """Σ^{LG/LT}: 모든 값의 차수를 dim G − dim T 만큼 올린다"""
    shift = adjoint_shift(module)
    result = module.shifted(shift)
    result.name = f"ad({module.name})"
    return result


def adjoint_check(module: DiagramModule, bound: int = 20) -> AdjointReport:
    """고정 부분의 깃발마다 x ↦ κ ⊗ x 가 θ_*-값의 반불변 부분으로 동형인지

    κ 는 양의 근의 곱 (SO3 에서는 c).  근이 없으면 LG = LT 라 비교할 것이 없다.
    """
    ctx = module.context
    spec = ctx.spec
    shift = adjoint_shift(module)
    if not spec.positive_roots:
        return AdjointReport(spec.name, shift, None, [])
    if module.level != Level.G:
        raise UnsupportedError("수반 현수 비교는 G 수준 가군에서")
    solomon = solomon_check(spec, bound)
    kappa_steps = len(spec.positive_roots)
    failures = []
    for flag in ctx.flags:
        ring_map = descent_ring_map(ctx, flag)
        if not ctx.fixing_part(flag) or ring_map.kind != 'finite':
            continue
        value = module.value(flag)
        bc = BaseChange(value, ring_map, equivariant=True, chi=ctx.chi(Level.N, flag))
        target = bc.result
        step = target.step
        for t in range(value.lo + kappa_steps * step, value.hi + 1):
            u = t - kappa_steps * step
            n = value.dim(t)
            anti = linalg.eigenspace(target.sigma_at(u), -1) if target.dim(u) else linalg.zeros(0, 0)
            if anti.cols != n:
                failures.append({'flag': flag.label, 'degree': t, 'dims': [n, anti.cols]})
                continue
            if n == 0:
                continue
            images = linalg.hstack(target.dim(u), [bc.coords(kappa_steps, t, value_column, u)
                                                   for value_column in _columns(n)])
            if linalg.rank(images) != n or linalg.rank(anti.row_join(images)) != n:
                failures.append({'flag': flag.label, 'degree': t, 'dims': [n, linalg.rank(images)]})
    report = AdjointReport(spec.name, shift, solomon, failures)
    log("환", f"수반 현수 {spec.name}: 이동 {shift}, {'성립' if report.holds else '실패'}", level=2)
    return report


def _columns(n: int):
    eye = linalg.eye(n)
    return [eye[:, i] for i in range(n)]
