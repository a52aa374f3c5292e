"""
ToralKit 격자 모듈
극대 토러스의 부분군 포셋, 플래그, 바일 작용, 수송 범주, 성분 구조
"""

from .group_spec import GroupSpec, supported_groups
from .weyl import MatrixGroup, WeylAction
from .subgroup import ToralSubgroup, cotoral_leq
from .poset import Flag, SubgroupPoset, build_poset, enumerate_flags, check_weyl_preserves_order
from .transport import (TransportMorphism, transport_compose, identity_morphism,
                        enumerate_morphisms, check_transport_laws)
from .component import (ComponentStructure, StructureKind, IndexKind, component_structure,
                        connected_structure, discrete_structure, check_structure_flags,
                        discrete_residual, wgk_check, flag_isotropy_check)

__all__ = [
    'GroupSpec', 'supported_groups', 'MatrixGroup', 'WeylAction',
    'ToralSubgroup', 'cotoral_leq',
    'Flag', 'SubgroupPoset', 'build_poset', 'enumerate_flags', 'check_weyl_preserves_order',
    'TransportMorphism', 'transport_compose', 'identity_morphism', 'enumerate_morphisms',
    'check_transport_laws',
    'ComponentStructure', 'StructureKind', 'IndexKind', 'component_structure',
    'connected_structure', 'discrete_structure', 'check_structure_flags',
    'discrete_residual', 'wgk_check', 'flag_isotropy_check',
]
