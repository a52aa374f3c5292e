"""
ToralKit 셀 카탈로그
표준 토러스 스펙트럼(구, 셀 G/L₊, 멱등 스펙트럼 E⟨(K)⟩, 공유도 셀)의 대수적 상 π^𝒜
"""

import re
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import ConfigError, LatticeError, UnsupportedError
from ..core.log import debug, log
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, Summand
from ..gralg.koszul import thom_payload
from ..gralg.module_ops import restrict_scalars
from ..gralg.polynomial import QQ_RING
from ..lattice.poset import Flag
from ..lattice.subgroup import ToralSubgroup
from ..diagram.context import Level, ModelContext
from ..diagram.descent import psi, theta_star
from ..diagram.diagram_module import DiagramModule, diagram_sum
from ..homalg.injectives import f_K
from .fixed_points import fixed_point_decomposition


class CellKind(Enum):
    """셀 종류"""
    SPHERE = "sphere"
    TORAL_SPHERE = "etoral"
    CELL = "cell"
    IDEMPOTENT = "idem"
    COINDUCED = "coind"
    FREE_IDEMPOTENT = "free"
    SUSPENSION = "susp"
    SUM = "sum"


class CellSpec:
    """카탈로그 항목 (유한 직합과 차수 이동에 닫혀 있음)"""

    def __init__(self, kind: CellKind, subgroups: Sequence[str] = (), base: Optional['CellSpec'] = None,
                 parts: Sequence['CellSpec'] = (), shift: int = 0, source: str = ""):
        self.kind = kind
        self.subgroups = list(subgroups)
        self.base = base
        self.parts = list(parts)
        self.shift = shift
        self.source = source

    @property
    def label(self) -> str:
        kind = self.kind
        if kind in (CellKind.SPHERE, CellKind.TORAL_SPHERE):
            return kind.value
        if kind == CellKind.CELL:
            return f"cell:{self.subgroups[0]}"
        if kind == CellKind.IDEMPOTENT:
            return "idem:" + ",".join(self.subgroups)
        if kind == CellKind.FREE_IDEMPOTENT:
            return f"free:idem:{self.subgroups[0]}"
        if kind == CellKind.COINDUCED:
            return f"coind:{self.source}:{self.base.label}"
        if kind == CellKind.SUSPENSION:
            return f"susp{self.shift}:{self.base.label}"
        return "+".join(p.label for p in self.parts)

    def to_dict(self) -> Dict:
        return {'label': self.label, 'kind': self.kind.value}

    def __eq__(self, other):
        return isinstance(other, CellSpec) and other.label == self.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f"CellSpec({self.label})"


def _split_top(text: str) -> List[str]:
    """최상위 '+' 로 나누기 (괄호는 문법에 없음)"""
    return [part.strip() for part in text.split('+')]


def parse_cell(text: str) -> CellSpec:
    """셀 문법 해석

    sphere | etoral | cell:L | idem:K[,K...] | free:idem:K | coind:T:idem:K | coind:N:<셀>
    | susp<k>:<셀> | A+B
    """
    text = text.strip()
    if not text:
        raise ConfigError("빈 셀 이름")
    parts = _split_top(text)
    if len(parts) > 1:
        return CellSpec(CellKind.SUM, parts=[parse_cell(p) for p in parts])
    if text in ("sphere", "etoral"):
        return CellSpec(CellKind(text))
    match = re.fullmatch(r'susp(-?\d+):(.+)', text)
    if match:
        return CellSpec(CellKind.SUSPENSION, base=parse_cell(match.group(2)), shift=int(match.group(1)))
    match = re.fullmatch(r'coind:(T|N):(.+)', text)
    if match:
        base = parse_cell(match.group(2))
        if match.group(1) == "T" and base.kind != CellKind.IDEMPOTENT:
            raise ConfigError(f"coind:T 는 멱등 셀만 받음: {text}")
        return CellSpec(CellKind.COINDUCED, base=base, source=match.group(1))
    match = re.fullmatch(r'free:idem:(\w+)', text)
    if match:
        return CellSpec(CellKind.FREE_IDEMPOTENT, [match.group(1)])
    match = re.fullmatch(r'idem:([\w,]+)', text)
    if match:
        return CellSpec(CellKind.IDEMPOTENT, [s for s in match.group(1).split(',') if s])
    match = re.fullmatch(r'cell:(\w+)', text)
    if match:
        return CellSpec(CellKind.CELL, [match.group(1)])
    raise ConfigError(f"셀 문법 오류: {text!r}")


def catalog_names(context: ModelContext) -> List[str]:
    """문맥에서 쓸 수 있는 기본 셀 이름"""
    names = ["sphere", "etoral", "idem:T"]
    finite = [K.label for K in context.finite_subgroups()]
    names += [f"idem:{k}" for k in finite]
    names += ["cell:T"] + [f"cell:{k}" for k in finite]
    names += [f"coind:T:idem:{k}" for k in finite] + [f"free:idem:{k}" for k in finite]
    return names


# ----- 페이로드 -----

def thom_module(context: ModelContext, level: Level, K: ToralSubgroup,
                window: Tuple[int, int]) -> GradedModule:
    """H_*((BW^e K)^{L W^e K}): 바닥 차수 1의 나눗셈 가군 (G 수준 고정 부분은 바닥 dim G, ℚ[d] 위)"""
    lo, hi = window
    single = Flag([K])
    ring = context.ring(level, single)
    if level == Level.G and context.fixing_part(single):
        return GradedModule.from_summands(ring, [Summand.divisible(context.spec.dim)], lo, hi, equivariant=False)
    acts = context.acts(level, single)
    summand = thom_payload(1, twist=1 if acts else 0)
    return GradedModule.from_summands(ring, [summand], lo, hi, equivariant=acts,
                                      chi=context.chi(level, single))


def regular_payload(context: ModelContext, level: Level, K: ToralSubgroup,
                    window: Tuple[int, int]) -> GradedModule:
    """ℚ[W] ⊗ H_*((BT/K)^{L T/K}) (작용이 없으면 한 벌)"""
    lo, hi = window
    single = Flag([K])
    ring = context.ring(level, single)
    if context.acts(level, single):
        summands = [Summand.divisible(1, 0), Summand.divisible(1, 1)]
        return GradedModule.from_summands(ring, summands, lo, hi, equivariant=True, chi=context.chi(level, single))
    return GradedModule.from_summands(ring, [Summand.divisible(1)], lo, hi, equivariant=False)


def coinduced_payload(context: ModelContext, level: Level, K: ToralSubgroup,
                      window: Tuple[int, int]) -> GradedModule:
    """ℚ[W^d K] ⊗ H_*((BT/K)^{L T/K}) 를 수준의 환 위에서"""
    if level == Level.T:
        raise UnsupportedError("공유도 셀은 N, G 수준에서만")
    single = Flag([K])
    if level == Level.G and context.fixing_part(single):
        lo, hi = window
        upstairs = context.ring(Level.N, single)
        plain = GradedModule.from_summands(upstairs, [Summand.divisible(1)], lo, hi, equivariant=False)
        return restrict_scalars(plain, context.ring(Level.G, single)).restrict(lo, hi)
    return regular_payload(context, level, K, window)


# ----- π^𝒜 -----

def _free_summands(signs: Sequence[int], equivariant: bool) -> List[Summand]:
    return [Summand.free(0, 1 if (equivariant and e == -1) else 0) for e in signs]


def _signed_sphere(context: ModelContext, level: Level, signs: Sequence[int],
                   window: Tuple[int, int], name: str) -> DiagramModule:
    """M(T) = ⊕ ℚ(부호), M(K) = ⊕ ℚ[c](부호), 차수 0 생성원끼리 대응"""
    lo, hi = window
    top = context.torus_flag()
    acts_top = context.acts(level, top)
    torus = GradedModule.from_summands(QQ_RING, _free_summands(signs, acts_top), lo, hi, equivariant=acts_top)
    finite, images = {}, {}
    for K in context.finite_subgroups():
        single = Flag([K])
        acts = context.acts(level, single)
        finite[K] = GradedModule.from_summands(context.ring(level, single), _free_summands(signs, acts),
                                               lo, hi, equivariant=acts, chi=context.chi(level, single))
        images[K] = {0: [(0, linalg.eye(len(signs)))]}
    return DiagramModule.assemble(context, level, torus, finite, images, window, name)


def _regular_signs(order: int) -> List[int]:
    return [1, -1] if order == 2 else [1] * order


def _cell(context: ModelContext, level: Level, L: ToralSubgroup, window: Tuple[int, int],
          name: str) -> DiagramModule:
    """G/L₊: 고정점 조각마다 ℚ[(𝔚G)_L] 만큼의 복사본

    W^e 가 비자명한 자리(SO3 의 C₁)에는 조각마다 H*(G/T) 한 벌이 들어간다.
    """
    decomposition = fixed_point_decomposition(L, context.poset, space=f"T/{L.label}")
    signs: List[int] = []
    for piece in decomposition.pieces:
        signs.extend(_regular_signs(piece.stabilizer_order))
    if level == Level.T:
        signs = [1] * len(signs)
    if L.is_torus:
        if not any(context.fixing_part(Flag([K])) for K in context.finite_subgroups()):
            return _signed_sphere(context, level, signs, window, name)
        return _flag_variety_cell(context, level, signs, len(decomposition), window, name)
    lo, hi = window
    finite = {}
    for K in context.finite_subgroups():
        if not any(Li.contains(K) for Li in decomposition.subgroups()):
            continue
        single = Flag([K])
        acts = context.acts(level, single)
        if context.fixing_part(single):
            summands = _flag_variety_torsion(context, level) * len(decomposition)
        else:
            # 자유 T/K-궤도의 보렐 호몰로지: 차수 1의 꼬임 ℚ
            summands = [Summand.torsion(1, 1, 1 if (acts and e == -1) else 0) for e in signs]
        finite[K] = GradedModule.from_summands(context.ring(level, single), summands, lo, hi,
                                               equivariant=acts, chi=context.chi(level, single))
    return DiagramModule.assemble(context, level, None, finite, None, window, name)


def _flag_variety_torsion(context: ModelContext, level: Level) -> List[Summand]:
    """H_*(G) 의 T-보렐 호몰로지: 꼭대기 차수 dim G, ℚ[c] 위 길이 |𝔚G| (G 수준은 ℚ[d] 위 한 칸)"""
    top = context.spec.dim
    if level == Level.G:
        return [Summand.torsion(top, 1)]
    return [Summand.torsion(top, context.weyl_order)]


def _flag_variety_cell(context: ModelContext, level: Level, signs: Sequence[int], pieces: int,
                       window: Tuple[int, int], name: str) -> DiagramModule:
    """G/T₊: M(T) = ℚ[𝔚G], W^e 가 비자명한 K 에서 M(K) = H*(BT) ⊗ H*(G/T)

    국소화에서 부호 + 생성원은 차수 0, 부호 − 생성원은 c⁻¹ ⊗ (차수 −gap 생성원)으로 간다.
    """
    lo, hi = window
    gap = context.spec.dim - context.spec.rank
    top = context.torus_flag()
    acts_top = context.acts(level, top)
    torus = GradedModule.from_summands(QQ_RING, _free_summands(signs, acts_top), lo, hi, equivariant=acts_top)
    n = len(signs)
    finite, images = {}, {}
    for K in context.finite_subgroups():
        single = Flag([K])
        acts = context.acts(level, single)
        ring = context.ring(level, single)
        if not context.fixing_part(single):
            finite[K] = GradedModule.from_summands(ring, _free_summands(signs, acts), lo, hi,
                                                   equivariant=acts, chi=context.chi(level, single))
            images[K] = {0: [(0, linalg.eye(n))]}
            continue
        value = GradedModule.from_summands(ring, [Summand.free(0), Summand.free(-gap)] * pieces, lo, hi,
                                           equivariant=acts, chi=context.chi(level, single))
        bottom = linalg.zeros(value.dim(0), n)
        lower = linalg.zeros(value.dim(-gap), n)
        per = value.dim(-gap) // pieces
        for p in range(pieces):
            bottom[p, 2 * p] = 1
            lower[(p + 1) * per - 1, 2 * p + 1] = 1
        finite[K] = value
        images[K] = {0: [(0, bottom), (-gap, lower)]}
    return DiagramModule.assemble(context, level, torus, finite, images, window, name)


def _subgroup(context: ModelContext, label: str) -> ToralSubgroup:
    try:
        return context.poset.get(label)
    except LatticeError:
        raise UnsupportedError(f"{context.group} 포셋에 없는 부분군: {label}")


def _top_payload(context: ModelContext, level: Level, window: Tuple[int, int]) -> GradedModule:
    lo, hi = window
    acts = context.acts(level, context.torus_flag())
    return GradedModule.from_summands(QQ_RING, [Summand.free(0)], lo, hi, equivariant=acts)


def _idempotent(context: ModelContext, level: Level, label: str, window: Tuple[int, int]) -> DiagramModule:
    K = _subgroup(context, label)
    if K.is_torus:
        payload = _top_payload(context, level, window)
    else:
        payload = thom_module(context, level, K, window)
    return f_K(context, level, K, payload, name=f"idem:{label}")


def pi_A(cell: CellSpec, context: ModelContext, window: Tuple[int, int],
         level: Level = Level.G) -> DiagramModule:
    """셀의 대수적 상 π^𝒜 (준연접, F-연속)"""
    kind = cell.kind
    name = cell.label
    if kind in (CellKind.SPHERE, CellKind.TORAL_SPHERE):
        result = _signed_sphere(context, level, [1], window, name)
    elif kind == CellKind.CELL:
        result = _cell(context, level, _subgroup(context, cell.subgroups[0]), window, name)
    elif kind == CellKind.IDEMPOTENT:
        if not cell.subgroups:
            lo, hi = window
            return DiagramModule.zero(context, level, lo, hi, name)
        pieces = [_idempotent(context, level, label, window) for label in cell.subgroups]
        result = pieces[0] if len(pieces) == 1 else diagram_sum(pieces, name)[0]
    elif kind == CellKind.FREE_IDEMPOTENT:
        K = _subgroup(context, cell.subgroups[0])
        if level == Level.T:
            raise UnsupportedError("자유 멱등 셀은 N, G 수준에서만")
        n_level = f_K(context, Level.N, K, regular_payload(context, Level.N, K, window), name=name)
        result = psi(n_level) if level == Level.G else n_level
    elif kind == CellKind.COINDUCED:
        result = _coinduced(cell, context, window, level)
    elif kind == CellKind.SUSPENSION:
        result = pi_A(cell.base, context, window, level).shifted(cell.shift)
    else:
        result = diagram_sum([pi_A(p, context, window, level) for p in cell.parts], name)[0]
    result.name = name
    debug("격자", f"π^𝒜({name}) @ {level.value}: 지지 {[K.label for K in geometric_support(result)]}")
    return result


def _coinduced(cell: CellSpec, context: ModelContext, window: Tuple[int, int], level: Level) -> DiagramModule:
    if level == Level.T:
        raise UnsupportedError("공유도 셀은 N, G 수준에서만")
    if cell.source == "N":
        # π^𝒜_G(F_N(G₊, Y)) = Ψ π^𝒜_N(Y); N 수준 값은 그 제한
        g_level = psi(pi_A(cell.base, context, window, Level.N))
        return g_level if level == Level.G else theta_star(g_level)
    pieces = []
    for label in cell.base.subgroups:
        K = _subgroup(context, label)
        if K.is_torus:
            raise UnsupportedError("coind:T 는 유한 부분군의 멱등 셀만")
        pieces.append(f_K(context, level, K, coinduced_payload(context, level, K, window)))
    return pieces[0] if len(pieces) == 1 else diagram_sum(pieces, cell.label)[0]


# ----- 지지 계산 -----

def geometric_support(module: DiagramModule) -> List[ToralSubgroup]:
    """Φ^K 가 0이 아닌 K: 토러스는 값이 0이 아닐 때, 유한 K는 M(K) → M(T⊃K) 가 동형이 아닐 때"""
    ctx = module.context
    result = []
    if not module.value(ctx.torus_flag()).is_zero():
        result.append(ctx.poset.torus)
    for K in ctx.finite_subgroups():
        beta = module.map(Flag([K]), ctx.localized_flag(K))
        if not beta.is_iso():
            result.append(K)
    return sorted(result, key=ToralSubgroup.sort_key)


def smash_idempotents(a: CellSpec, b: CellSpec) -> CellSpec:
    """E⟨ℋ₁⟩ ∧ E⟨ℋ₂⟩ = E⟨ℋ₁ ∩ ℋ₂⟩"""
    if a.kind != CellKind.IDEMPOTENT or b.kind != CellKind.IDEMPOTENT:
        raise UnsupportedError("멱등 셀끼리만 스매시")
    common = [k for k in a.subgroups if k in set(b.subgroups)]
    log("격자", f"{a.label} ∧ {b.label} = idem:{','.join(common) or '∅'}", level=2)
    return CellSpec(CellKind.IDEMPOTENT, common)
