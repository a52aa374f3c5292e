"""
ToralKit 호몰로지 대수 모듈
평가의 오른쪽 수반 f_K, 단사 분해, Ext 표
"""

from .injectives import InjectiveSpec, f_K, hom_into_injective, injective_hull, embed_in_injectives
from .resolution import Resolution, injective_resolution, localization_sequence_check
from .ext import ExtTable, ext

__all__ = [
    'InjectiveSpec', 'f_K', 'hom_into_injective', 'injective_hull', 'embed_in_injectives',
    'Resolution', 'injective_resolution', 'localization_sequence_check',
    'ExtTable', 'ext',
]
