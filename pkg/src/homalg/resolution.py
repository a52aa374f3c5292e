"""
ToralKit 단사 분해
여핵에 매장을 되풀이해 0 → M → I₀ → I₁ → ⋯ 를 만든다
"""

from typing import Dict, List, Optional

from ..core.errors import ResolutionError
from ..core.log import log, warn
from ..gralg import linalg
from ..gralg.graded_module import SummandKind
from ..diagram.context import Level
from ..diagram.descent import psi, psi_map, theta_star, unit_map
from ..diagram.diagram_module import DiagramMap, DiagramModule, diagram_cokernel
from .injectives import InjectiveSpec, embed_in_injectives


class Resolution:
    """target → terms[0] → terms[1] → ⋯ (maps[0] 이 첨가 사상)"""

    def __init__(self, target: DiagramModule, terms: List[DiagramModule], maps: List[DiagramMap],
                 specs: List[List[InjectiveSpec]]):
        self.target = target
        self.terms = terms
        self.maps = maps
        self.specs = specs

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    def differential(self, i: int) -> DiagramMap:
        """d_i: I_i → I_{i+1}"""
        return self.maps[i + 1]

    def check_exactness(self) -> Optional[Dict]:
        """창의 모든 차수에서 완전성이 깨지는 첫 자리 (없으면 None)"""
        ctx = self.target.context
        for flag in ctx.flags:
            x = self.target.value(flag)
            for t in range(x.lo, x.hi + 1):
                ranks = [linalg.rank(f.component(flag).matrix(t)) for f in self.maps]
                if ranks and ranks[0] != x.dim(t):
                    return {'flag': flag.label, 'degree': t, 'stage': -1, 'reason': 'augmentation not injective'}
                for i, term in enumerate(self.terms):
                    incoming = ranks[i]
                    outgoing = ranks[i + 1] if i + 1 < len(ranks) else 0
                    if incoming + outgoing != term.value(flag).dim(t):
                        return {'flag': flag.label, 'degree': t, 'stage': i,
                                'reason': f"rank {incoming} + {outgoing} != dim {term.value(flag).dim(t)}"}
                for i in range(len(self.maps) - 1):
                    composite = self.maps[i].component(flag).compose(self.maps[i + 1].component(flag))
                    if not linalg.is_zero(composite.matrix(t)):
                        return {'flag': flag.label, 'degree': t, 'stage': i, 'reason': 'd∘d != 0'}
        return None

    def verify(self):
        witness = self.check_exactness()
        if witness is not None:
            raise ResolutionError(f"분해가 완전하지 않음: {self.target.name}", witness)

    def to_dict(self) -> Dict:
        return {
            'target': self.target.name,
            'level': self.target.level.value,
            'length': self.length,
            'terms': [[s.to_dict() for s in stage] for stage in self.specs],
        }

    def __repr__(self):
        return f"Resolution({self.target.name}, length={self.length})"


def _resolve(m: DiagramModule, max_len: int) -> Resolution:
    terms: List[DiagramModule] = []
    maps: List[DiagramMap] = []
    specs: List[List[InjectiveSpec]] = []
    current = m
    projection: Optional[DiagramMap] = None
    for stage in range(max_len + 1):
        if current.is_zero():
            break
        eps, injective, stage_specs = embed_in_injectives(current)
        maps.append(eps if projection is None else projection.compose(eps))
        terms.append(injective)
        specs.append(stage_specs)
        current, projection = diagram_cokernel(eps)
        log("분해", f"{m.name}: {stage}단계 단사 {len(stage_specs)}개", level=2)
    else:
        if not current.is_zero():
            raise ResolutionError(f"{m.name}: 길이 {max_len} 안에 분해가 끝나지 않음",
                                  {'module': m.name, 'max_len': max_len,
                                   'support': [K.label for K in current.support()]})
    return Resolution(m, terms, maps, specs)


def injective_resolution(m: DiagramModule, max_len: Optional[int] = None, verify: bool = True) -> Resolution:
    """단사 분해 (길이는 군의 랭크 이하여야 함)

    G 수준은 θ_* m 을 N 수준에서 분해한 뒤 항마다 Ψ 를 적용한다.
    """
    max_len = m.context.spec.rank if max_len is None else max_len
    if m.level == Level.G:
        lifted = _resolve(theta_star(m), max_len)
        terms = [psi(term) for term in lifted.terms]
        maps = []
        for i, f in enumerate(lifted.maps):
            g = psi_map(f)
            maps.append(unit_map(m).compose(g) if i == 0 else g)
        specs = [[InjectiveSpec(Level.G, s.orbit, s.payload) for s in stage] for stage in lifted.specs]
        result = Resolution(m, terms, maps, specs)
    else:
        result = _resolve(m, max_len)
    if result.length > m.context.spec.rank:
        warn("분해", f"{m.name}: 길이 {result.length} > 랭크 {m.context.spec.rank}")
    if verify:
        result.verify()
    log("분해", f"{m.name}: 길이 {result.length} 분해 ({m.context.group}, {m.level.value} 수준)")
    return result


def localization_sequence_check(resolution: Resolution) -> Dict:
    """구면 분해를 국소화 수열과 대조

    0단계는 토러스의 f_T(ℚ) 하나, 1단계는 유한 부분군마다 나눗셈 가군.
    """
    specs = resolution.specs
    first = specs[0] if specs else []
    second = specs[1] if len(specs) > 1 else []
    top = first[0].payload.normal_form().summands if len(first) == 1 else []
    top_ok = (len(first) == 1 and first[0].orbit.is_torus and len(top) == 1
              and top[0].kind == SummandKind.FREE and top[0].shift == 0)
    divisible_ok = all(not s.orbit.is_torus
                       and all(x.kind == SummandKind.DIVISIBLE for x in s.payload.normal_form().summands)
                       for s in second)
    finite = {K.label for K in resolution.target.context.finite_subgroups()}
    covered = {s.orbit.label for s in second}
    report = {
        'holds': top_ok and divisible_ok and covered == finite and resolution.length <= 1,
        'first': [s.to_dict() for s in first],
        'second': [s.to_dict() for s in second],
        'missing': sorted(finite - covered),
    }
    if not report['holds']:
        warn("분해", f"{resolution.target.name}: 국소화 수열과 다름 {report['missing']}")
    return report
