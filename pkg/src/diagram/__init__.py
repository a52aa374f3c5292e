"""
ToralKit 다이어그램 모듈
깃발 위의 환 다이어그램, 다이어그램 가군, qce/F-연속성 검사, 하강 함자 θ_*와 Ψ
"""

from .ring_diagram import RingFlavor, RingDiagram, build_Ra, build_Rinv, build_Rtw, restricted_action
from .context import Level, ModelContext, build_context
from .diagram_module import DiagramModule, DiagramMap, diagram_sum, diagram_cokernel, fraction_map
from .qce import QceReport, ContinuityReport, check_qce, check_F_continuity
from .descent import (DescentReport, descent_ring_map, theta_star, theta_star_map, psi, psi_map,
                      unit_map, unit_check, counit_map, counit_check, triangle_check,
                      eigenspace_law, functor_law_failures)
from .hom import DiagramHom, diagram_hom
from .corpus import random_module, corpus

__all__ = [
    'RingFlavor', 'RingDiagram', 'build_Ra', 'build_Rinv', 'build_Rtw', 'restricted_action',
    'Level', 'ModelContext', 'build_context',
    'DiagramModule', 'DiagramMap', 'diagram_sum', 'diagram_cokernel', 'fraction_map',
    'QceReport', 'ContinuityReport', 'check_qce', 'check_F_continuity',
    'DescentReport', 'descent_ring_map', 'theta_star', 'theta_star_map', 'psi', 'psi_map',
    'unit_map', 'unit_check', 'counit_map', 'counit_check', 'triangle_check',
    'eigenspace_law', 'functor_law_failures',
    'DiagramHom', 'diagram_hom',
    'random_module', 'corpus',
]
