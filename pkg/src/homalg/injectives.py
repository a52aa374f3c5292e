"""
ToralKit 단사 대상
평가의 오른쪽 수반 f_K, 단사 껍질, 단사 대상으로의 매장
"""

from typing import Dict, List, Optional, Tuple

from sympy import Matrix

from ..core.errors import ModuleError
from ..core.log import log
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, ModuleMap, Summand
from ..gralg.module_ops import BaseChange, HomSpace, hom_space, inverse_map, socle
from ..lattice.poset import Flag
from ..lattice.subgroup import ToralSubgroup
from ..diagram.context import Level, ModelContext
from ..diagram.descent import descent_ring_map, psi, psi_map, theta_star, unit_map
from ..diagram.diagram_module import DiagramMap, DiagramModule, diagram_sum
from ..diagram.qce import check_qce


class InjectiveSpec:
    """f_{(K)}(payload) 의 기술"""

    def __init__(self, level: Level, orbit: ToralSubgroup, payload: GradedModule):
        self.level = level
        self.orbit = orbit
        self.payload = payload

    def realize(self, context: ModelContext) -> DiagramModule:
        return f_K(context, self.level, self.orbit, self.payload)

    def to_dict(self) -> Dict:
        return {'level': self.level.value, 'orbit': self.orbit.label,
                'payload': self.payload.normal_form().label}

    def __repr__(self):
        return f"f_({self.orbit.label})[{self.payload.normal_form().label}]"


def _require_torsion(payload: GradedModule, K: ToralSubgroup):
    if not payload.normal_form().is_torsion:
        raise ModuleError(f"f_({K.label}) 페이로드가 꼬임 가군이 아님: {payload.normal_form().label}")


def _fit_sigma(module: GradedModule, acts: bool, chi: int) -> GradedModule:
    if acts and module.sigma is None:
        return module.with_sigma({t: linalg.eye(d) for t, d in module.dims.items()}, chi)
    if not acts and module.sigma is not None:
        return module.without_sigma()
    return module


def f_K(context: ModelContext, level: Level, K: ToralSubgroup, payload: GradedModule,
        name: Optional[str] = None) -> DiagramModule:
    """평가 M ↦ M(K) 의 오른쪽 수반

    T, N 수준: f_T(V) 는 토러스에 V, 그 아래 깃발과 부분군에 ℰ⁻¹ ⊗ V.
    f_{C_n}(P) 는 C_n 에만 P.  G 수준은 Ψ f^N(θ_* P).
    """
    name = name or f"f_{K.label}"
    if level == Level.G:
        single = Flag([K])
        bc = BaseChange(payload, descent_ring_map(context, single),
                        equivariant=context.acts(Level.N, single), chi=context.chi(Level.N, single))
        result = psi(f_K(context, Level.N, K, bc.result, name))
        result.name = name
        return result
    lo, hi = payload.lo, payload.hi
    top = context.torus_flag()
    values: Dict[Flag, GradedModule] = {}
    maps: Dict = {}
    if K == context.poset.torus:
        values[top] = payload
        for L in context.finite_subgroups():
            single, flag = Flag([L]), context.localized_flag(L)
            bc = BaseChange(payload, context.ring_map(level, top, flag),
                            equivariant=context.acts(level, flag), chi=context.chi(level, flag))
            values[flag] = bc.result
            values[single] = _fit_sigma(bc.result.over_ring(context.ring(level, single)),
                                        context.acts(level, single), context.chi(level, single))
            maps[(top, flag)] = bc.natural_map()
            maps[(single, flag)] = ModuleMap(values[single], bc.result,
                                             {t: linalg.eye(bc.result.dims[t]) for t in range(lo, hi + 1)})
    else:
        _require_torsion(payload, K)
        values[Flag([K])] = payload
    for flag in context.flags:
        if flag not in values:
            values[flag] = GradedModule.zero(context.ring(level, flag), lo, hi, context.acts(level, flag),
                                             context.chi(level, flag))
    return DiagramModule(context, level, values, maps, name)


def hom_into_injective(module: DiagramModule, spec: InjectiveSpec, degree: int = 0) -> HomSpace:
    """Hom_𝒜(M, f_(K)(P))_k = Hom(M(K), P)_k^{W^d} (닫힌 꼴)"""
    ctx = module.context
    flag = Flag([spec.orbit])
    return hom_space(module.value(flag), spec.payload, degree, equivariant=ctx.acts(spec.level, flag))


# ----- 단사 껍질 -----

def _extend_basis(current: Matrix, candidates: Matrix) -> Matrix:
    """current 열공간을 candidates 열로 넓혀 가며 새로 고른 열만 반환"""
    chosen = []
    r = linalg.rank(current) if current.cols else 0
    for j in range(candidates.cols):
        trial = current.row_join(candidates[:, j])
        if linalg.rank(trial) > r:
            current = trial
            r += 1
            chosen.append(candidates[:, j])
    return linalg.hstack(candidates.rows, chosen)


def _socle_functionals(module: GradedModule, basis: Matrix, t: int) -> List[Tuple[Matrix, int]]:
    """차수 t 밑받침 기저의 쌍대 범함수 (작용이 있으면 고유 부호와 함께)"""
    n = module.dim(t)
    if module.sigma is None:
        full = basis.row_join(linalg.complement(basis, n))
        inv = linalg.inverse(full)
        return [(inv[i, :], 1) for i in range(basis.cols)]
    sigma = module.sigma_at(t)
    restricted = linalg.solve(basis, sigma * basis)
    parts, signs = [], []
    for sign in (1, -1):
        part = basis * linalg.eigenspace(restricted, sign)
        parts.append(part)
        signs.extend([sign] * part.cols)
    socle_cols = linalg.hstack(n, parts)
    rest = []
    current = socle_cols
    for sign in (1, -1):
        extra = _extend_basis(current, linalg.eigenspace(sigma, sign))
        current = current.row_join(extra)
        rest.append(extra)
    full = linalg.hstack(n, [socle_cols] + rest)
    inv = linalg.inverse(full)
    return [(inv[i, :], signs[i]) for i in range(socle_cols.cols)]


def injective_hull(module: GradedModule) -> Tuple[GradedModule, ModuleMap]:
    """밑받침 원소마다 나눗셈 성분 하나: φ: M → ⊕ D(t_i), 꼬임 부분에서 단사"""
    s = module.step
    soc, inclusion = socle(module)
    functionals: List[Tuple[int, Matrix, int]] = []
    for t in range(soc.lo, soc.hi + 1):
        if soc.dim(t) == 0:
            continue
        for row, sign in _socle_functionals(module, inclusion.matrix(t), t):
            functionals.append((t, row, sign))
    summands = [Summand.divisible(t, 0 if sign == 1 else 1) for t, _, sign in functionals]
    hull = GradedModule.from_summands(module.ring, summands, module.lo, module.hi,
                                      equivariant=module.equivariant, chi=module.chi)
    mats = {}
    for u in range(module.lo, module.hi + 1):
        rows = []
        for t, row, _ in functionals:
            if u >= t and (u - t) % s == 0:
                rows.append(row * module.path(u, t))
        mats[u] = linalg.vstack(module.dim(u), rows)
    return hull, ModuleMap(module, hull, mats)


# ----- 매장 -----

def _top_embedding(module: DiagramModule, top_injective: DiagramModule) -> DiagramMap:
    """M → f_T(M(T)): 토러스에서 항등, 깃발에서 (확장 사상)⁻¹"""
    ctx = module.context
    top = ctx.torus_flag()
    components = {top: module.value(top).identity_map()}
    for K in ctx.finite_subgroups():
        single, flag = Flag([K]), ctx.localized_flag(K)
        bc = BaseChange(module.value(top), ctx.ring_map(module.level, top, flag),
                        equivariant=ctx.acts(module.level, flag), chi=ctx.chi(module.level, flag))
        inverse = inverse_map(bc.extend_map(module.map(top, flag)))
        target = top_injective.value(flag)
        components[flag] = ModuleMap(module.value(flag), target,
                                     {t: inverse.matrix(t) for t in range(module.value(flag).lo,
                                                                          module.value(flag).hi + 1)})
        beta = module.map(single, flag)
        x = module.value(single)
        components[single] = ModuleMap(x, top_injective.value(single),
                                       {t: inverse.matrix(t) * beta.matrix(t) for t in range(x.lo, x.hi + 1)})
    return DiagramMap(module, top_injective, components)


def embed_in_injectives(module: DiagramModule) -> Tuple[DiagramMap, DiagramModule, List[InjectiveSpec]]:
    """M → f_T(M(T)) ⊕ ⊕_K f_K(껍질) 단사 사상

    지지 여차원이 작은 쪽(토러스)부터 처리한다. G 수준은 θ_* 를 거쳐 Ψ 로 돌아온다.
    """
    ctx = module.context
    ctx.spec.require_module_scope()
    if module.level == Level.G:
        eps, injective, specs = embed_in_injectives(theta_star(module))
        lifted = psi_map(eps)
        lifted.target.name = injective.name
        return unit_map(module).compose(lifted), lifted.target, [InjectiveSpec(Level.G, s.orbit, s.payload) for s in specs]
    report = check_qce(module)
    if not report.holds:
        failure = report.failures[0]
        raise ModuleError(f"qce가 아닌 가군은 매장하지 않음: {failure['sub']} → {failure['flag']} "
                          f"차수 {failure['degree']}")
    top = ctx.torus_flag()
    pieces: List[Tuple[DiagramModule, DiagramMap]] = []
    specs: List[InjectiveSpec] = []
    top_value = module.value(top)
    if not top_value.is_zero():
        injective = f_K(ctx, module.level, ctx.poset.torus, top_value)
        pieces.append((injective, _top_embedding(module, injective)))
        specs.append(InjectiveSpec(module.level, ctx.poset.torus, top_value))
    for K in ctx.finite_subgroups():
        single = Flag([K])
        hull, phi = injective_hull(module.value(single))
        if hull.is_zero():
            continue
        injective = f_K(ctx, module.level, K, hull)
        components = {single: ModuleMap(module.value(single), injective.value(single), phi.mats)}
        pieces.append((injective, DiagramMap(module, injective, components)))
        specs.append(InjectiveSpec(module.level, K, hull))
    if not pieces:
        lo, hi = module.window
        zero = DiagramModule.zero(ctx, module.level, lo, hi)
        return DiagramMap(module, zero, {}), zero, []
    total, inclusions, _ = diagram_sum([p[0] for p in pieces], name="I")
    eps = None
    for (injective, piece), inc in zip(pieces, inclusions):
        term = piece.compose(inc)
        eps = term if eps is None else eps.add(term)
    log("분해", f"{module.name}: 단사 {len(specs)}개에 매장 ({', '.join(repr(s) for s in specs)})", level=2)
    return eps, total, specs
