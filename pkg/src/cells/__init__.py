"""
ToralKit 셀 모듈
표준 스펙트럼의 대수적 상, 고정점 분해, 수반 표현 현수, 군 변경
"""

from .fixed_points import FixedPointPiece, FixedPointDecomposition, fixed_point_decomposition
from .catalog import (CellKind, CellSpec, parse_cell, catalog_names, thom_module, regular_payload,
                      coinduced_payload, pi_A, geometric_support, smash_idempotents)
from .adjoint import AdjointReport, adjoint_shift, suspend_adjoint, adjoint_check
from .change_groups import (SUPPORTED_PAIRS, FUNCTORS, change_groups, dimension_table,
                            compare_dimensions, shriek_star_agreement)

__all__ = [
    'FixedPointPiece', 'FixedPointDecomposition', 'fixed_point_decomposition',
    'CellKind', 'CellSpec', 'parse_cell', 'catalog_names', 'thom_module', 'regular_payload',
    'coinduced_payload', 'pi_A', 'geometric_support', 'smash_idempotents',
    'AdjointReport', 'adjoint_shift', 'suspend_adjoint', 'adjoint_check',
    'SUPPORTED_PAIRS', 'FUNCTORS', 'change_groups', 'dimension_table',
    'compare_dimensions', 'shriek_star_agreement',
]
