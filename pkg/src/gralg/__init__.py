"""
ToralKit 차수 대수 모듈
다항식환, 군 작용과 불변식, 국소화, 차수 가군과 정규형, 코줄 복합체
"""

from .polynomial import (GradedRing, RingMap, RingAction, TwistedGroupRing, polynomial_ring,
                         hilbert_series, QQ_RING, C_RING, D_RING, L_RING, LD_RING)
from .invariants import InvariantRing, invariants, molien_series, reynolds
from .graded_module import SummandKind, Summand, NormalForm, Window, GradedModule, ModuleMap, classify
from .module_ops import (BaseChange, HomSpace, NormalityReport, tensor_over, fixed_points, fixed_ring,
                         localized_ring, kernel, image, cokernel, direct_sum, shift, twist,
                         torsion_submodule, socle, is_divisible, hom_space, is_normal_module,
                         pushout_extension, inverse_map, restrict_scalars)
from .localization import EulerSet, ExchangeReport, euler_set, localize, check_localization_exchange
from .koszul import KoszulComplex, stable_koszul, thom_payload
from .solomon import SolomonReport, solomon_check

__all__ = [
    'GradedRing', 'RingMap', 'RingAction', 'TwistedGroupRing', 'polynomial_ring', 'hilbert_series',
    'QQ_RING', 'C_RING', 'D_RING', 'L_RING', 'LD_RING',
    'InvariantRing', 'invariants', 'molien_series', 'reynolds',
    'SummandKind', 'Summand', 'NormalForm', 'Window', 'GradedModule', 'ModuleMap', 'classify',
    'BaseChange', 'HomSpace', 'NormalityReport', 'tensor_over', 'fixed_points', 'fixed_ring',
    'localized_ring', 'kernel', 'image', 'cokernel', 'direct_sum', 'shift', 'twist',
    'torsion_submodule', 'socle', 'is_divisible', 'hom_space', 'is_normal_module',
    'pushout_extension', 'inverse_map', 'restrict_scalars',
    'EulerSet', 'ExchangeReport', 'euler_set', 'localize', 'check_localization_exchange',
    'KoszulComplex', 'stable_koszul', 'thom_payload',
    'SolomonReport', 'solomon_check',
]
