"""
ToralKit 하강 함자
θ_*: R_inv 가군 → R̃ 동변 가군 (스칼라 확장), Ψ: 그 역방향 (W^e 고정점)
단위/여단위 검사와 고유공간 법칙
"""

from typing import Dict, List, Optional, Tuple

from ..core.errors import ModuleError
from ..core.log import log
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, ModuleMap
from ..gralg.module_ops import BaseChange, fixed_points
from ..gralg.polynomial import RingMap
from ..lattice.poset import Flag
from .context import Level, ModelContext
from .diagram_module import DiagramMap, DiagramModule


def descent_ring_map(context: ModelContext, flag: Flag) -> RingMap:
    """R_inv(F) → R̃(F)"""
    source = context.ring(Level.G, flag)
    target = context.ring(Level.N, flag)
    if source == target:
        return RingMap.identity(source)
    return RingMap(source, target, source.step // target.step)


def _require_level(module: DiagramModule, level: Level, name: str):
    if module.level != level:
        raise ModuleError(f"{name}: {level.value} 수준 가군이 필요함 (받은 수준 {module.level.value})")


def _theta_parts(m: DiagramModule) -> Tuple[DiagramModule, Dict[Flag, BaseChange]]:
    ctx = m.context
    parts = {}
    for flag in ctx.flags:
        parts[flag] = BaseChange(m.value(flag), descent_ring_map(ctx, flag),
                                 equivariant=ctx.acts(Level.N, flag), chi=ctx.chi(Level.N, flag))
    values = {flag: bc.result for flag, bc in parts.items()}
    maps = {}
    for (sub, flag), beta in m.maps.items():
        maps[(sub, flag)] = parts[sub].extend_map(beta.compose(parts[flag].natural_map()))
    return DiagramModule(ctx, Level.N, values, maps, f"θ({m.name})"), parts


def theta_star(m: DiagramModule) -> DiagramModule:
    """(θ_* m)(F) = R̃(F) ⊗_{R_inv(F)} m(F)"""
    _require_level(m, Level.G, "θ_*")
    return _theta_parts(m)[0]


def theta_star_map(f: DiagramMap) -> DiagramMap:
    """θ_* f: 깃발마다 기저 변환 사이의 유도 사상"""
    _require_level(f.source, Level.G, "θ_*")
    source, bc_x = _theta_parts(f.source)
    target, bc_y = _theta_parts(f.target)
    components = {flag: bc_x[flag].map_to(bc_y[flag], f.component(flag)) for flag in source.context.flags}
    return DiagramMap(source, target, components, f.degree)


def _psi_parts(n: DiagramModule) -> Tuple[DiagramModule, Dict[Flag, ModuleMap]]:
    ctx = n.context
    values: Dict[Flag, GradedModule] = {}
    inclusions: Dict[Flag, ModuleMap] = {}
    for flag in ctx.flags:
        value = n.value(flag)
        if ctx.fixing_part(flag):
            if value.sigma is None:
                raise ModuleError(f"Ψ: {flag.label} 값에 바일 작용 데이터가 없음")
            fixed, inclusion = fixed_points(value)
            ring = ctx.ring(Level.G, flag)
            if fixed.ring != ring:
                fixed = fixed.over_ring(ring)
                inclusion = ModuleMap(fixed, inclusion.target, inclusion.mats)
            values[flag], inclusions[flag] = fixed, inclusion
        else:
            if not ctx.acts(Level.G, flag) and value.sigma is not None:
                value = value.without_sigma()
            values[flag] = value
            inclusions[flag] = ModuleMap(value, n.value(flag), {t: linalg.eye(value.dims[t])
                                                                 for t in range(value.lo, value.hi + 1)})
    maps = {}
    for (sub, flag), beta in n.maps.items():
        g = inclusions[sub].compose(beta)
        if ctx.fixing_part(flag):
            inc = inclusions[flag]
            mats = {t: linalg.solve(inc.matrix(t), g.matrix(t)) for t in range(values[sub].lo, values[sub].hi + 1)}
            maps[(sub, flag)] = ModuleMap(values[sub], values[flag], mats)
        else:
            maps[(sub, flag)] = ModuleMap(values[sub], values[flag], g.mats)
    return DiagramModule(ctx, Level.G, values, maps, f"Ψ({n.name})"), inclusions


def psi(n: DiagramModule) -> DiagramModule:
    """(Ψ n)(F) = n(F)^{W_F^e}"""
    _require_level(n, Level.N, "Ψ")
    return _psi_parts(n)[0]


def psi_map(f: DiagramMap) -> DiagramMap:
    _require_level(f.source, Level.N, "Ψ")
    source, inc_x = _psi_parts(f.source)
    target, inc_y = _psi_parts(f.target)
    components = {}
    for flag in source.context.flags:
        g = inc_x[flag].compose(f.component(flag))
        x = source.value(flag)
        mats = {t: linalg.solve(inc_y[flag].matrix(t + f.degree), g.matrix(t)) for t in range(x.lo, x.hi + 1)}
        components[flag] = ModuleMap(x, target.value(flag), mats, f.degree)
    return DiagramMap(source, target, components, f.degree)


class DescentReport:
    """단위/여단위 검사 결과"""

    def __init__(self, name: str, holds: bool, witness: Optional[Dict] = None):
        self.name = name
        self.holds = holds
        self.witness = witness

    def __bool__(self):
        return self.holds

    def to_dict(self) -> Dict:
        return {'check': self.name, 'holds': self.holds, 'witness': self.witness}

    def __repr__(self):
        return f"DescentReport({self.name}, {self.holds})"


def _first_non_iso(f: ModuleMap, lo: int, hi: int) -> Optional[int]:
    for t in range(lo, hi + 1):
        m = f.matrix(t)
        if m.rows != m.cols or linalg.rank(m) != m.rows:
            return t
    return None


def unit_map(m: DiagramModule) -> DiagramMap:
    """η: m → Ψθ_* m"""
    _require_level(m, Level.G, "단위")
    n, parts = _theta_parts(m)
    target, inclusions = _psi_parts(n)
    components = {}
    for flag in m.context.flags:
        natural = parts[flag].natural_map()
        x = m.value(flag)
        mats = {}
        for t in range(x.lo, x.hi + 1):
            try:
                mats[t] = linalg.solve(inclusions[flag].matrix(t), natural.matrix(t))
            except ModuleError:
                raise ModuleError(f"단위 사상이 고정점으로 들어가지 않음: {flag.label} 차수 {t}")
        components[flag] = ModuleMap(x, target.value(flag), mats)
    return DiagramMap(m, target, components)


def unit_check(m: DiagramModule) -> DescentReport:
    """η가 m의 창 위에서 동형인지"""
    eta = unit_map(m)
    for flag in m.context.flags:
        x = m.value(flag)
        t = _first_non_iso(eta.component(flag), x.lo, x.hi)
        if t is not None:
            return DescentReport('unit', False, {'flag': flag.label, 'degree': t})
    return DescentReport('unit', True)


def counit_map(n: DiagramModule) -> DiagramMap:
    """ε: θ_*Ψ n → n"""
    _require_level(n, Level.N, "여단위")
    ctx = n.context
    fixed, inclusions = _psi_parts(n)
    source, parts = _theta_parts(fixed)
    components = {flag: parts[flag].extend_map(inclusions[flag]) for flag in ctx.flags}
    return DiagramMap(source, n, components)


def counit_check(n: DiagramModule) -> DescentReport:
    """ε가 n의 창 위에서 동형인지 (G에서 제한된 가군만 통과)"""
    epsilon = counit_map(n)
    for flag in n.context.flags:
        y = n.value(flag)
        t = _first_non_iso(epsilon.component(flag), y.lo, y.hi)
        if t is not None:
            log("격자", f"여단위 실패: {flag.label} 차수 {t}", level=2)
            return DescentReport('counit', False, {'flag': flag.label, 'degree': t})
    return DescentReport('counit', True)


def triangle_check(m: DiagramModule) -> DescentReport:
    """ε_{θm} ∘ θ_*(η_m) = id"""
    composite = theta_star_map(unit_map(m)).compose(counit_map(theta_star(m)))
    for flag, f in composite.components.items():
        for t in range(f.source.lo, f.source.hi + 1):
            if f.matrix(t) != linalg.eye(f.source.dim(t)):
                return DescentReport('triangle', False, {'flag': flag.label, 'degree': t})
    return DescentReport('triangle', True)


def eigenspace_law(n: DiagramModule, flag: Flag) -> Optional[int]:
    """dim n(F)⁻_t = dim n(F)⁺_{t+2} 가 깨지는 첫 차수 t"""
    value = n.value(flag)
    if value.sigma is None:
        raise ModuleError(f"{flag.label} 값에 바일 작용이 없음")

    def eigen_dim(t: int, sign: int) -> int:
        if value.dim(t) == 0:
            return 0
        return linalg.eigenspace(value.sigma_at(t), sign).cols

    for t in range(value.lo, value.hi - 1):
        if eigen_dim(t, -1) != eigen_dim(t + 2, 1):
            return t
    return None


def _same(f: DiagramMap, g: DiagramMap) -> bool:
    for flag, a in f.components.items():
        b = g.component(flag)
        for t in range(a.source.lo, a.source.hi + 1):
            if a.matrix(t) != b.matrix(t):
                return False
    return True


def functor_law_failures(f: DiagramMap, g: DiagramMap) -> List[str]:
    """θ_*와 Ψ가 항등과 합성을 보존하는지 (f 다음 g)"""
    failures = []
    if f.source.level == Level.G:
        theta, name = theta_star_map, "θ_*"
    else:
        theta, name = psi_map, "Ψ"
    if not _same(theta(f.source.identity()), theta(f.source.identity()).source.identity()):
        failures.append(f"{name} 항등")
    if not _same(theta(f.compose(g)), theta(f).compose(theta(g))):
        failures.append(f"{name} 합성")
    return failures
