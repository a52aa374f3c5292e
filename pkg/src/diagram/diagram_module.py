"""
ToralKit 다이어그램 가군
깃발마다 차수 가군, 부분깃발 포함마다 환 사상 위의 가군 사상
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from ..core.errors import ModuleError
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, ModuleMap, Summand
from ..gralg.module_ops import BaseChange, cokernel, direct_sum, shift
from ..gralg.polynomial import QQ_RING
from ..lattice.poset import Flag
from ..lattice.subgroup import ToralSubgroup
from .context import Level, ModelContext

Edge = Tuple[Flag, Flag]


class DiagramModule:
    """깃발 색인 가군 M과 구조 사상 M(F') → M(F)"""

    def __init__(self, context: ModelContext, level: Level, values: Dict[Flag, GradedModule],
                 maps: Optional[Dict[Edge, ModuleMap]] = None, name: str = ""):
        self.context = context
        self.level = level
        self.name = name
        missing = [f.label for f in context.flags if f not in values]
        if missing:
            raise ModuleError(f"값이 없는 깃발: {', '.join(missing)}")
        self.values = {f: values[f] for f in context.flags}
        self.maps: Dict[Edge, ModuleMap] = {}
        for sub, flag in context.edges():
            f = (maps or {}).get((sub, flag))
            if f is None:
                f = ModuleMap(self.values[sub], self.values[flag], {})
            self.maps[(sub, flag)] = f

    # ----- 조회 -----

    def value(self, flag: Flag) -> GradedModule:
        return self.values[flag]

    def map(self, sub: Flag, flag: Flag) -> ModuleMap:
        return self.maps[(sub, flag)]

    def at(self, K: ToralSubgroup) -> GradedModule:
        return self.values[Flag([K])]

    @property
    def window(self) -> Tuple[int, int]:
        return (min(m.lo for m in self.values.values()), max(m.hi for m in self.values.values()))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.values.values())

    def support(self) -> List[ToralSubgroup]:
        """값이 0이 아닌 부분군 (길이 0 깃발)"""
        return [f.first for f in self.context.singletons() if not self.values[f].is_zero()]

    def labels(self) -> Dict[str, str]:
        return {f.label: self.values[f].normal_form().label for f in self.context.flags}

    # ----- 검사 -----

    def check(self) -> List[Dict]:
        """환, 가군 사상, 대합 조건 위반 목록 (비어 있으면 정상)"""
        problems = []
        ctx = self.context
        for flag, m in self.values.items():
            expected = ctx.ring(self.level, flag)
            if m.ring != expected:
                problems.append({'flag': flag.label, 'problem': 'ring',
                                 'expected': expected.label, 'found': m.ring.label})
            if ctx.acts(self.level, flag) != m.equivariant:
                problems.append({'flag': flag.label, 'problem': 'action'})
            elif m.equivariant:
                bad = _involution_failure(m)
                if bad is not None:
                    problems.append({'flag': flag.label, 'problem': 'involution', 'degree': bad})
        for (sub, flag), f in self.maps.items():
            bad = f.check_module_map()
            if bad is not None:
                problems.append({'edge': f"{sub.label}->{flag.label}", 'problem': 'module_map', 'degree': bad})
            if f.source.sigma is None and f.target.sigma is not None:
                # 작용이 없는 쪽에서 오는 사상은 고정 부분에 떨어져야 함
                for t in range(f.source.lo, f.source.hi + 1):
                    if f.target.sigma_at(t) * f.matrix(t) != f.matrix(t):
                        problems.append({'edge': f"{sub.label}->{flag.label}", 'problem': 'invariance',
                                         'degree': t})
                        break
        return problems

    def is_valid(self) -> bool:
        return not self.check()

    # ----- 변환 -----

    def shifted(self, a: int) -> 'DiagramModule':
        """Σ^a"""
        values = {f: shift(m, a) for f, m in self.values.items()}
        maps = {e: ModuleMap(values[e[0]], values[e[1]], {t + a: m for t, m in f.mats.items()})
                for e, f in self.maps.items()}
        return DiagramModule(self.context, self.level, values, maps, f"susp{a}:{self.name}" if a else self.name)

    def identity(self) -> 'DiagramMap':
        return DiagramMap(self, self, {f: m.identity_map() for f, m in self.values.items()})

    # ----- 생성 -----

    @classmethod
    def zero(cls, context: ModelContext, level: Level, lo: int, hi: int, name: str = "0") -> 'DiagramModule':
        values = {f: GradedModule.zero(context.ring(level, f), lo, hi, context.acts(level, f),
                                       context.chi(level, f)) for f in context.flags}
        return cls(context, level, values, None, name)

    @classmethod
    def assemble(cls, context: ModelContext, level: Level, torus: Optional[GradedModule],
                 finite: Dict[ToralSubgroup, GradedModule],
                 images: Optional[Dict[ToralSubgroup, Dict[int, Sequence]]] = None,
                 window: Optional[Tuple[int, int]] = None, name: str = "") -> 'DiagramModule':
        """준연접 가군 조립

        M(T⊃K) = R(T⊃K) ⊗ M(K), β는 자연 사상.
        images[K][t] = (u, Y): M(T)_t 의 기저 v_i ↦ c^{(u-t)/s} ⊗ Y[:, i] (Y의 열은 M(K)_u 원소).
        (u, Y) 목록을 주면 항들을 더한다.
        """
        images = images or {}
        if window is None:
            modules = ([torus] if torus is not None else []) + list(finite.values())
            if not modules:
                raise ModuleError("창을 정할 값이 없음")
            window = (min(m.lo for m in modules), max(m.hi for m in modules))
        lo, hi = window
        top = context.torus_flag()
        if torus is None:
            torus = GradedModule.zero(QQ_RING, lo, hi, context.acts(level, top))
        values: Dict[Flag, GradedModule] = {top: torus}
        maps: Dict[Edge, ModuleMap] = {}
        for K in context.finite_subgroups():
            single = Flag([K])
            m = finite.get(K)
            if m is None:
                m = GradedModule.zero(context.ring(level, single), lo, hi, context.acts(level, single),
                                      context.chi(level, single))
            values[single] = m
            flag = context.localized_flag(K)
            if flag not in context.flags:
                continue
            bc = BaseChange(m, context.ring_map(level, single, flag),
                            equivariant=context.acts(level, flag), chi=context.chi(level, flag))
            values[flag] = bc.result
            maps[(single, flag)] = bc.natural_map()
            maps[(top, flag)] = fraction_map(bc, torus, images.get(K, {}))
        return cls(context, level, values, maps, name)

    # ----- 직렬화 -----

    def to_dict(self) -> Dict:
        lo, hi = self.window
        return {
            'group': self.context.group,
            'N': self.context.poset.truncation_N,
            'level': self.level.value,
            'name': self.name,
            'window': [lo, hi],
            'values': {f.label: _value_dict(m) for f, m in self.values.items()},
            'maps': {f"{a.label}->{b.label}": {'matrices': {str(t): linalg.as_list(m)
                                                           for t, m in f.mats.items() if m.rows and m.cols}}
                     for (a, b), f in self.maps.items()},
        }

    @classmethod
    def from_dict(cls, context: ModelContext, data: Dict) -> 'DiagramModule':
        """JSON 가군 리터럴 읽기

        길이 1 깃발의 값이 없고 사상이 "natural"이면 기저 변환으로 채운다.
        """
        level = Level(data.get('level', 'G'))
        lo, hi = data['window']
        raw_values = data.get('values', {})
        raw_maps = data.get('maps', {})
        values: Dict[Flag, GradedModule] = {}
        for flag in context.flags:
            if flag.label in raw_values:
                values[flag] = _parse_value(context, level, flag, raw_values[flag.label], lo, hi)
        maps: Dict[Edge, ModuleMap] = {}
        for sub, flag in context.edges():
            key = f"{sub.label}->{flag.label}"
            spec = raw_maps.get(key)
            if spec == 'natural':
                if sub not in values:
                    raise ModuleError(f"자연 사상의 원천 값이 없음: {key}")
                bc = BaseChange(values[sub], context.ring_map(level, sub, flag),
                                equivariant=context.acts(level, flag), chi=context.chi(level, flag))
                if flag not in values:
                    values[flag] = bc.result
                natural = bc.natural_map()
                maps[(sub, flag)] = natural if values[flag] is bc.result else \
                    ModuleMap(values[sub], values[flag], natural.mats)
        for flag in context.flags:
            if flag not in values:
                values[flag] = GradedModule.zero(context.ring(level, flag), lo, hi, context.acts(level, flag),
                                                 context.chi(level, flag))
        for sub, flag in context.edges():
            spec = raw_maps.get(f"{sub.label}->{flag.label}")
            if not isinstance(spec, dict):
                continue
            source, target = values[sub], values[flag]
            if 'images' in spec:
                bc = BaseChange(values[_last(context, flag)], context.ring_map(level, _last(context, flag), flag),
                                equivariant=context.acts(level, flag), chi=context.chi(level, flag))
                images = {int(t): [(int(i['u']), _matrix(i['matrix'])) for i in _as_list(item)]
                          for t, item in spec['images'].items()}
                maps[(sub, flag)] = ModuleMap(source, target, fraction_map(bc, source, images).mats)
            else:
                mats = {}
                for t, rows in spec.get('matrices', {}).items():
                    t = int(t)
                    mats[t] = linalg.from_list(target.dim(t), source.dim(t), rows)
                maps[(sub, flag)] = ModuleMap(source, target, mats)
        return cls(context, level, values, maps, data.get('name', ''))

    def __repr__(self):
        body = ', '.join(f"{k}={v}" for k, v in self.labels().items())
        return f"DiagramModule[{self.level.value}]({body})"


def _involution_failure(m: GradedModule) -> Optional[int]:
    """σ² = 1, 생성원 c σ = χ σ c"""
    s = m.step
    for t in range(m.lo, m.hi + 1):
        sig = m.sigma_at(t)
        if sig * sig != linalg.eye(m.dim(t)):
            return t
        if s and t - s >= m.lo:
            if m.gen_at(t) * sig != m.chi * m.sigma_at(t - s) * m.gen_at(t):
                return t
    return None


def _last(context: ModelContext, flag: Flag) -> Flag:
    return Flag([flag.last])


def _matrix(rows) -> Matrix:
    if not rows:
        return linalg.zeros(0, 0)
    return linalg.from_list(len(rows), len(rows[0]), rows)


def _value_dict(m: GradedModule) -> Dict:
    data = m.to_dict()
    data.pop('ring', None)
    return data


def _parse_value(context: ModelContext, level: Level, flag: Flag, raw: Dict, lo: int, hi: int) -> GradedModule:
    ring = context.ring(level, flag)
    acts = context.acts(level, flag)
    chi = context.chi(level, flag)
    w_lo, w_hi = raw.get('window', [lo, hi])
    if 'summands' in raw:
        summands = [Summand.from_dict(s) for s in raw['summands']]
        return GradedModule.from_summands(ring, summands, w_lo, w_hi, equivariant=acts, chi=chi)
    data = dict(raw)
    data['ring'] = ring.to_dict()
    data['window'] = [w_lo, w_hi]
    data['chi'] = chi
    data['equivariant'] = acts
    if 'action' in data and 'sigma' not in data:
        data['sigma'] = data.pop('action')
    return GradedModule.from_dict(data)


def _as_list(item) -> List:
    return item if isinstance(item, list) else [item]


def fraction_map(bc: BaseChange, source: GradedModule, images: Dict[int, Sequence]) -> ModuleMap:
    """분수 표기 c^{-j} ⊗ y 로 준 사상 source → bc.result

    images[t]는 (u, Y) 또는 그 목록이며 목록의 항들은 더한다.
    """
    s = bc.target_ring.step
    mats = {}
    for t, terms in images.items():
        if not source.lo <= t <= source.hi:
            raise ModuleError(f"상의 차수 {t}가 원천 창 밖")
        total = linalg.zeros(bc.result.dim(t), source.dim(t))
        for u, y in _as_list(terms):
            if (u - t) % s:
                raise ModuleError(f"분수 표기 차수 불일치: {u} → {t}")
            if y.rows != bc.module.dim(u) or y.cols != source.dim(t):
                raise ModuleError(f"상 행렬 크기 오류 (차수 {t}): {y.shape}")
            total += bc.coords((u - t) // s, u, y, t)
        mats[t] = total
    return ModuleMap(source, bc.result, mats)


class DiagramMap:
    """다이어그램 가군 사상 (깃발별 차수 k 사상)"""

    def __init__(self, source: DiagramModule, target: DiagramModule, components: Dict[Flag, ModuleMap],
                 degree: int = 0):
        self.source = source
        self.target = target
        self.degree = degree
        self.components: Dict[Flag, ModuleMap] = {}
        for flag in source.context.flags:
            f = components.get(flag)
            if f is None:
                f = ModuleMap(source.value(flag), target.value(flag), {}, degree)
            self.components[flag] = f

    def component(self, flag: Flag) -> ModuleMap:
        return self.components[flag]

    def naturality_failure(self) -> Optional[Dict]:
        """구조 사상과의 가환성 위반 (첫 번째)"""
        k = self.degree
        for (sub, flag), beta in self.source.maps.items():
            gamma = self.target.map(sub, flag)
            f_sub, f_flag = self.components[sub], self.components[flag]
            for t in range(beta.source.lo, beta.source.hi + 1):
                if gamma.matrix(t + k) * f_sub.matrix(t) != f_flag.matrix(t) * beta.matrix(t):
                    return {'edge': f"{sub.label}->{flag.label}", 'degree': t}
        return None

    def check(self) -> List[Dict]:
        problems = []
        for flag, f in self.components.items():
            bad = f.check_module_map()
            if bad is not None:
                problems.append({'flag': flag.label, 'degree': bad})
        failure = self.naturality_failure()
        if failure:
            problems.append(failure)
        return problems

    def compose(self, other: 'DiagramMap') -> 'DiagramMap':
        """self 다음 other"""
        return DiagramMap(self.source, other.target,
                          {f: self.components[f].compose(other.components[f]) for f in self.components},
                          self.degree + other.degree)

    def add(self, other: 'DiagramMap', coeff=1) -> 'DiagramMap':
        return DiagramMap(self.source, self.target,
                          {f: self.components[f].add(other.components[f], coeff) for f in self.components},
                          self.degree)

    def is_injective(self) -> bool:
        return all(f.is_injective() for f in self.components.values())

    def failure(self) -> Optional[Tuple[str, int]]:
        """동형이 아닌 첫 (깃발, 차수)"""
        for flag, f in self.components.items():
            t = f.failure_degree()
            if t is not None:
                return flag.label, t
        return None

    def is_iso(self) -> bool:
        return self.failure() is None

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components.values())


def diagram_sum(modules: Sequence[DiagramModule], name: str = "") -> Tuple[DiagramModule, List[DiagramMap], List[DiagramMap]]:
    """깃발별 직합과 포함/사영"""
    if not modules:
        raise ModuleError("빈 직합")
    context, level = modules[0].context, modules[0].level
    values, incs, projs = {}, {}, {}
    for flag in context.flags:
        values[flag], incs[flag], projs[flag] = direct_sum([m.value(flag) for m in modules])
    maps = {}
    for sub, flag in context.edges():
        k_sub, k_flag = values[sub], values[flag]
        mats = {}
        for t in range(k_sub.lo, k_sub.hi + 1):
            m = linalg.zeros(k_flag.dim(t), k_sub.dim(t))
            for i, module in enumerate(modules):
                beta = module.map(sub, flag)
                m += incs[flag][i].matrix(t) * beta.matrix(t) * projs[sub][i].matrix(t)
            mats[t] = m
        maps[(sub, flag)] = ModuleMap(k_sub, k_flag, mats)
    total = DiagramModule(context, level, values, maps, name or '+'.join(m.name for m in modules))
    inclusions = [DiagramMap(m, total, {f: incs[f][i] for f in context.flags}) for i, m in enumerate(modules)]
    projections = [DiagramMap(total, m, {f: projs[f][i] for f in context.flags}) for i, m in enumerate(modules)]
    return total, inclusions, projections


def diagram_cokernel(f: DiagramMap) -> Tuple[DiagramModule, DiagramMap]:
    """깃발별 여핵과 유도된 구조 사상"""
    target = f.target
    context = target.context
    values, projs = {}, {}
    for flag in context.flags:
        values[flag], projs[flag] = cokernel(f.components[flag])
    maps = {}
    for sub, flag in context.edges():
        c_sub, c_flag = values[sub], values[flag]
        gamma = target.map(sub, flag)
        mats = {}
        for t in range(c_sub.lo, c_sub.hi + 1):
            p = projs[sub].matrix(t)
            lift = linalg.solve(p, linalg.eye(c_sub.dim(t))) if c_sub.dim(t) else linalg.zeros(p.cols, 0)
            mats[t] = projs[flag].matrix(t) * gamma.matrix(t) * lift
        maps[(sub, flag)] = ModuleMap(c_sub, c_flag, mats)
    quotient = DiagramModule(context, target.level, values, maps, f"coker({target.name})")
    projection = DiagramMap(target, quotient, projs)
    return quotient, projection
