"""
ToralKit 무작위 가군 모음
시드 고정 난수로 준연접·확장·F-연속 다이어그램 가군을 만든다
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.log import log
from ..gralg import linalg
from ..gralg.graded_module import GradedModule, Summand
from ..gralg.polynomial import QQ_RING
from ..lattice.poset import Flag
from .context import Level, ModelContext
from .diagram_module import DiagramModule


def _torsion_summands(rng: np.random.Generator, step: int, lo: int, hi: int, equivariant: bool,
                      count: int) -> List[Summand]:
    result = []
    if step == 0:
        return result
    for _ in range(count):
        exponent = int(rng.integers(1, 3))
        top = hi - step
        bottom = lo + step + (exponent - 1) * step
        if bottom > top:
            continue
        shift = top - step * int(rng.integers(0, (top - bottom) // step + 1))
        twist = int(rng.integers(0, 2)) if equivariant else 0
        result.append(Summand.torsion(shift, exponent, twist))
    return result


def _generator_degree(rng: np.random.Generator, chi: int, sign: int, equivariant: bool,
                      span: int = 4) -> Tuple[int, int]:
    """c^{-a} ⊗ g 가 차수 0에서 부호 sign을 갖도록 하는 (생성원 차수 u, g의 꼬임)"""
    a = int(rng.integers(0, span))
    if not equivariant:
        # 고정점 환 위: c^{u/2} ⊗ g 의 부호가 χ^{u/2}
        if chi == -1 and (-1) ** a != sign:
            a += 1
        return -2 * a, 0
    twist = 0 if sign * chi ** a == 1 else 1
    return -2 * a, twist


def random_module(context: ModelContext, level: Level, rng: np.random.Generator,
                  window: Tuple[int, int], rank: Optional[int] = None, torsion: int = 2,
                  name: str = "random") -> DiagramModule:
    """M(T) = ℚ^r (차수 0), 유한 부분군마다 자유 성분 r개와 꼬임 성분 몇 개

    토러스 원소 v_i 는 c^{-a_i} ⊗ g_i 로 보내므로 결과는 준연접·확장이다.
    """
    lo, hi = window
    r = int(rng.integers(0, 3)) if rank is None else rank
    top = context.torus_flag()
    acts_top = context.acts(level, top)
    signs = [1 if not acts_top or rng.integers(0, 2) == 0 else -1 for _ in range(r)]
    torus = GradedModule.from_summands(QQ_RING, [Summand.free(0, 0 if e == 1 else 1) for e in signs],
                                       lo, hi, equivariant=acts_top)
    finite: Dict = {}
    images: Dict = {}
    for K in context.finite_subgroups():
        single = Flag([K])
        ring = context.ring(level, single)
        equivariant = context.acts(level, single)
        flag = context.localized_flag(K)
        chi_flag = context.chi(level, flag) if context.acts(level, flag) else 1
        summands, degrees = [], []
        for e in signs:
            u, twist = _generator_degree(rng, chi_flag, e, equivariant)
            summands.append(Summand.free(u, twist))
            degrees.append(u)
        summands.extend(_torsion_summands(rng, ring.step, lo, hi, equivariant, int(rng.integers(0, torsion + 1))))
        module = GradedModule.from_summands(ring, summands, lo, hi, equivariant=equivariant,
                                            chi=context.chi(level, single))
        finite[K] = module
        terms = []
        for i, u in enumerate(degrees):
            # from_summands 는 성분 순서대로 원소를 놓고 자유 성분이 앞에 온다
            y = linalg.zeros(module.dim(u), r)
            y[_generator_index(degrees, i, u, ring.step), i] = 1
            terms.append((u, y))
        if r:
            images[K] = {0: terms}
    log("격자", f"무작위 가군 {name}: 수준 {level.value}, 랭크 {r}", level=2)
    return DiagramModule.assemble(context, level, torus, finite, images, window, name)


def _generator_index(degrees: List[int], index: int, u: int, step: int) -> int:
    """차수 u에서 index번째 자유 성분 생성원의 기저 번호 (앞선 자유 성분 중 u에 닿는 것의 수)"""
    return sum(1 for v in degrees[:index] if u <= v and (v - u) % step == 0)


def corpus(context: ModelContext, level: Level, count: int, seed: int,
           window: Tuple[int, int]) -> List[DiagramModule]:
    """시드 고정 모음 (같은 시드면 같은 가군들)"""
    rng = np.random.default_rng(seed)
    modules = [random_module(context, level, rng, window, name=f"corpus{i}") for i in range(count)]
    log("격자", f"{context.group} {level.value} 수준 모음 {count}개 (시드 {seed})")
    return modules
