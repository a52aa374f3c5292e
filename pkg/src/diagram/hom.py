"""
ToralKit 다이어그램 Hom
깃발별 Hom 공간의 구조 사상 호환 조건 등화자
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from ..core.errors import ModuleError
from ..core.log import debug
from ..gralg import linalg
from ..gralg.graded_module import ModuleMap
from ..gralg.module_ops import HomSpace, hom_space
from ..lattice.poset import Flag
from .diagram_module import DiagramMap, DiagramModule


def _common_window(x: DiagramModule, y: DiagramModule, degree: int) -> Tuple[int, int]:
    x_lo, x_hi = x.window
    y_lo, y_hi = y.window
    s = max(max(m.step for m in x.values.values()), max(m.step for m in y.values.values()))
    pad = abs(degree) + 2 * s + 2
    return min(x_lo, y_lo) - pad, max(x_hi, y_hi) + pad


class DiagramHom:
    """Hom_𝒜(X, Y)_k 의 ℚ-기저"""

    def __init__(self, source: DiagramModule, target: DiagramModule, degree: int,
                 spaces: Dict[Flag, HomSpace], kernel: Matrix):
        self.source = source
        self.target = target
        self.degree = degree
        self.spaces = spaces
        self.kernel = kernel
        self.offsets: Dict[Flag, int] = {}
        offset = 0
        for flag in source.context.flags:
            self.offsets[flag] = offset
            offset += spaces[flag].dim
        self.total = offset

    @property
    def dim(self) -> int:
        return self.kernel.cols

    def combination(self, coeffs: Sequence) -> DiagramMap:
        params = self.kernel * Matrix(len(coeffs), 1, list(coeffs)) if self.dim else linalg.zeros(self.total, 1)
        components = {}
        for flag, space in self.spaces.items():
            o = self.offsets[flag]
            local = [params[o + i, 0] for i in range(space.dim)]
            wide = space.combination(local)
            x, y = self.source.value(flag), self.target.value(flag)
            mats = {t: wide.matrix(t) for t in range(x.lo, x.hi + 1)}
            components[flag] = ModuleMap(x, y, mats, self.degree)
        return DiagramMap(self.source, self.target, components, self.degree)

    def as_map(self, index: int) -> DiagramMap:
        coeffs = [0] * self.dim
        coeffs[index] = 1
        return self.combination(coeffs)

    def basis(self) -> List[DiagramMap]:
        return [self.as_map(i) for i in range(self.dim)]

    def parameters(self, h: DiagramMap) -> Matrix:
        """깃발별 Hom 공간 좌표를 이어 붙인 벡터"""
        blocks = []
        for flag in self.source.context.flags:
            space = self.spaces[flag]
            f = h.component(flag)
            mats = {t: f.matrix(t) for t in space.degrees}
            blocks.append(space.coordinates(mats) if space.dim else linalg.zeros(0, 1))
        return linalg.vstack(1, blocks)

    def coordinates(self, h: DiagramMap) -> Matrix:
        """기저에 대한 좌표 (Hom 밖이면 ModuleError)"""
        if h.degree != self.degree:
            raise ModuleError(f"차수 불일치: {h.degree} ≠ {self.degree}")
        if self.dim == 0:
            if not linalg.is_zero(self.parameters(h)):
                raise ModuleError("Hom이 0인데 사상이 0이 아님")
            return linalg.zeros(0, 1)
        return linalg.solve(self.kernel, self.parameters(h))

    def to_dict(self) -> Dict:
        return {'degree': self.degree, 'dim': self.dim,
                'flags': {f.label: s.dim for f, s in self.spaces.items()}}


def _constraint_rows(x: DiagramModule, y: DiagramModule, degree: int, spaces: Dict[Flag, HomSpace],
                     offsets: Dict[Flag, int], total: int) -> List[Matrix]:
    rows = []
    k = degree
    for (sub, flag), beta_x in x.maps.items():
        beta_y = y.map(sub, flag)
        s_sub, s_flag = spaces[sub], spaces[flag]
        for t in s_sub.degrees:
            if t not in s_flag.degrees:
                continue
            n_rows = y.value(flag).dim(t + k) * x.value(sub).dim(t)
            if n_rows == 0:
                continue
            block = linalg.zeros(n_rows, total)
            left = beta_y.matrix(t + k)
            right = beta_x.matrix(t)
            for i, b in enumerate(s_sub.basis):
                if t in b:
                    block[:, offsets[sub] + i] += Matrix(linalg.flatten(left * b[t]))
            for i, b in enumerate(s_flag.basis):
                if t in b:
                    block[:, offsets[flag] + i] -= Matrix(linalg.flatten(b[t] * right))
            rows.append(block)
    return rows


def diagram_hom(x: DiagramModule, y: DiagramModule, degree: int = 0,
                window: Optional[Tuple[int, int]] = None) -> DiagramHom:
    """구조 사상과 가환인 깃발별 사상 (작용이 있는 깃발은 동변)"""
    if x.context is not y.context or x.level != y.level:
        raise ModuleError("Hom 양쪽의 문맥 또는 수준이 다름")
    ctx = x.context
    window = window or _common_window(x, y, degree)
    spaces = {}
    for flag in ctx.flags:
        spaces[flag] = hom_space(x.value(flag), y.value(flag), degree, window,
                                 equivariant=ctx.acts(x.level, flag))
    offsets, total = {}, 0
    for flag in ctx.flags:
        offsets[flag] = total
        total += spaces[flag].dim
    rows = _constraint_rows(x, y, degree, spaces, offsets, total)
    constraint = linalg.vstack(total, rows)
    if total == 0:
        kernel = linalg.zeros(0, 0)
    elif constraint.rows == 0:
        kernel = linalg.eye(total)
    else:
        kernel = linalg.nullspace(constraint)
    debug("Ext", f"Hom({x.name}, {y.name})_{degree}: 깃발별 {total} → {kernel.cols}")
    return DiagramHom(x, y, degree, spaces, kernel)
