"""
ToralKit 애덤스 E₂ 페이지
Ext 표에서 E₂ 를 만들고 붕괴 가능성을 표로 판정한다
"""

from typing import Dict, List, Optional, Tuple

from ..core.log import log, warn
from ..diagram.context import Level, ModelContext
from ..homalg.ext import ExtTable, ext
from ..cells.catalog import CellSpec, pi_A


class E2Page:
    """E₂^{s,t} = Ext^{s,t}(π^𝒜 X, π^𝒜 Y), E_{rank+1} 에서 붕괴"""

    def __init__(self, table: ExtTable, source: str = "", target: str = ""):
        self.table = table
        self.rank = table.rank
        self.collapse_at = table.rank + 1
        self.source = source
        self.target = target

    @property
    def totals(self) -> Dict[int, int]:
        return self.table.totals()

    def get(self, s: int, t: int) -> int:
        return self.table.get(s, t)

    def to_dict(self) -> Dict:
        data = self.table.to_dict()
        data.update({'source': self.source, 'target': self.target, 'collapse_at': self.collapse_at})
        return data

    def to_tsv(self) -> str:
        return self.table.to_tsv()

    def __repr__(self):
        return f"E2Page({self.source}, {self.target}, rank={self.rank})"


def e2_page(x: CellSpec, y: CellSpec, context: ModelContext, window: Tuple[int, int],
            jobs: int = 1, level: Level = Level.G) -> E2Page:
    """두 카탈로그 셀의 E₂ 페이지"""
    mx = pi_A(x, context, window, level)
    my = pi_A(y, context, window, level)
    table = ext(mx, my, window, jobs=jobs)
    bad = table.vanishing_failures()
    if bad:
        warn("Ext", f"s > rank 인 자리가 0이 아님: {bad[:3]}")
    page = E2Page(table, x.label, y.label)
    log("Ext", f"E₂({x.label}, {y.label}): 줄 {table.lines()}, 총합 {page.totals}")
    return page


class DegeneracyReport:
    """붕괴 판정: 수렴한 총 차원 또는 모호한 t−s"""

    def __init__(self, collapsed: bool, totals: Dict[int, int], ambiguous: List[int],
                 reason: str):
        self.collapsed = collapsed
        self.totals = totals
        self.ambiguous = ambiguous
        self.reason = reason

    def to_dict(self) -> Dict:
        return {
            'collapsed': self.collapsed,
            'reason': self.reason,
            'converged_totals': {str(k): v for k, v in self.totals.items()},
            'ambiguous': self.ambiguous,
        }


def _differential_targets(s: int, t: int, rank: int) -> List[Tuple[int, int]]:
    """d_r: (s, t) → (s + r, t + r − 1), 2 ≤ r ≤ rank"""
    return [(s + r, t + r - 1) for r in range(2, rank + 1)]


def degeneracy_report(page: E2Page) -> DegeneracyReport:
    """미분이 들어갈 자리가 없으면 E₂ = E∞"""
    table = page.table
    lines = table.lines()
    totals = table.totals()
    if not lines:
        return DegeneracyReport(True, {}, [], "empty")
    if max(lines) - min(lines) < 2:
        reason = "single line" if len(lines) == 1 else "two adjacent lines"
        return DegeneracyReport(True, totals, [], reason)
    ambiguous = set()
    for (s, t) in table.entries:
        for target in _differential_targets(s, t, page.rank):
            if table.get(*target):
                ambiguous.add(t - s)
                ambiguous.add(target[1] - target[0])
    if not ambiguous:
        return DegeneracyReport(True, totals, [], "no differential targets")
    converged = {n: v for n, v in totals.items() if n not in ambiguous}
    return DegeneracyReport(False, converged, sorted(ambiguous), "extension/differential ambiguity")


def unstable_degrees(page: E2Page, larger: E2Page) -> List[int]:
    """절단 N 을 키웠을 때 총 차원이 바뀌는 t−s"""
    a, b = page.totals, larger.totals
    return sorted(d for d in set(a) | set(b) if a.get(d, 0) != b.get(d, 0))
