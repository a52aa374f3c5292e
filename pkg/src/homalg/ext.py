"""
ToralKit Ext 계산
단사 분해에 Hom(X, -) 를 적용해 차수별 코호몰로지를 구한다
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

from ..core.errors import ModuleError
from ..core.log import debug, log
from ..gralg import linalg
from ..diagram.context import Level
from ..diagram.descent import theta_star
from ..diagram.diagram_module import DiagramModule
from ..diagram.hom import DiagramHom, diagram_hom
from .resolution import Resolution, injective_resolution


class ExtTable:
    """Ext^{s,t} 의 ℚ-차원 표 (t 는 Hom 차수)"""

    def __init__(self, entries: Dict[Tuple[int, int], int], window: Tuple[int, int],
                 group: str, N: int, rank: int, level: Level = Level.G):
        self.entries = {key: dim for key, dim in entries.items() if dim}
        self.window = tuple(window)
        self.group = group
        self.N = N
        self.rank = rank
        self.level = level

    def get(self, s: int, t: int) -> int:
        return self.entries.get((s, t), 0)

    def lines(self) -> List[int]:
        """값이 있는 s 들"""
        return sorted({s for s, _ in self.entries})

    def totals(self) -> Dict[int, int]:
        """t − s 별 총 차원"""
        result: Dict[int, int] = {}
        for (s, t), dim in self.entries.items():
            result[t - s] = result.get(t - s, 0) + dim
        return dict(sorted(result.items()))

    def vanishing_failures(self) -> List[Tuple[int, int]]:
        """s > rank 인데 0이 아닌 자리"""
        return sorted(key for key in self.entries if key[0] > self.rank)

    def shifted(self, a: int) -> 'ExtTable':
        """t ↦ t + a"""
        lo, hi = self.window
        return ExtTable({(s, t + a): d for (s, t), d in self.entries.items()}, (lo + a, hi + a),
                        self.group, self.N, self.rank, self.level)

    def restrict(self, lo: int, hi: int) -> 'ExtTable':
        return ExtTable({(s, t): d for (s, t), d in self.entries.items() if lo <= t <= hi}, (lo, hi),
                        self.group, self.N, self.rank, self.level)

    def to_tsv(self) -> str:
        rows = ["s\tt\tdim"]
        for (s, t), dim in sorted(self.entries.items()):
            rows.append(f"{s}\t{t}\t{dim}")
        return "\n".join(rows) + "\n"

    def to_dict(self) -> Dict:
        return {
            'group': self.group,
            'N': self.N,
            'rank': self.rank,
            'level': self.level.value,
            'window': list(self.window),
            'entries': [{'s': s, 't': t, 'dim': d} for (s, t), d in sorted(self.entries.items())],
            'totals': {str(k): v for k, v in self.totals().items()},
        }

    def __eq__(self, other):
        return isinstance(other, ExtTable) and self.entries == other.entries

    def __repr__(self):
        return f"ExtTable({self.group}, {len(self.entries)} entries)"


def _cochain_ranks(x: DiagramModule, resolution: Resolution, k: int) -> List[int]:
    """Ext^s_k 차원 목록 (s = 0 .. length)"""
    homs: List[DiagramHom] = [diagram_hom(x, term, k) for term in resolution.terms]
    ranks = []
    for s in range(len(homs) - 1):
        source, target = homs[s], homs[s + 1]
        if source.dim == 0 or target.dim == 0:
            ranks.append(0)
            continue
        d = resolution.differential(s)
        columns = [target.coordinates(h.compose(d)) for h in source.basis()]
        ranks.append(linalg.rank(linalg.hstack(target.dim, columns)))
    dims = []
    for s, hom in enumerate(homs):
        out_rank = ranks[s] if s < len(ranks) else 0
        in_rank = ranks[s - 1] if s > 0 else 0
        dims.append(hom.dim - out_rank - in_rank)
    debug("Ext", f"차수 {k}: Hom 차원 {[h.dim for h in homs]}, Ext {dims}")
    return dims


def ext(x: DiagramModule, y: DiagramModule, window: Optional[Tuple[int, int]] = None,
        jobs: int = 1, max_len: Optional[int] = None) -> ExtTable:
    """Ext^{s,t}(x, y): y 를 단사 분해하고 Hom(x, -) 의 코호몰로지

    G 수준은 Ext_G(X, Y) = Ext_N(θ_* X, θ_* Y) 로 계산한다.
    """
    if x.context is not y.context or x.level != y.level:
        raise ModuleError("Ext 양쪽의 문맥 또는 수준이 다름")
    ctx = x.context
    level = x.level
    if level == Level.G:
        x, y = theta_star(x), theta_star(y)
    lo, hi = window or x.window
    resolution = injective_resolution(y, max_len)
    degrees = list(range(lo, hi + 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda k: _cochain_ranks(x, resolution, k), degrees))
    else:
        rows = [_cochain_ranks(x, resolution, k) for k in degrees]
    entries = {}
    for k, dims in zip(degrees, rows):
        for s, dim in enumerate(dims):
            if dim:
                entries[(s, k)] = dim
    table = ExtTable(entries, (lo, hi), ctx.group, ctx.poset.truncation_N, ctx.spec.rank, level)
    log("Ext", f"Ext({x.name}, {y.name}): 분해 길이 {resolution.length}, 0이 아닌 자리 {len(table.entries)}개")
    return table
