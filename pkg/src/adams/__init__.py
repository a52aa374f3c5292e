"""
ToralKit 애덤스 모듈
E₂ 페이지와 붕괴 판정
"""

from .e2_page import E2Page, e2_page, DegeneracyReport, degeneracy_report, unstable_degrees

__all__ = ['E2Page', 'e2_page', 'DegeneracyReport', 'degeneracy_report', 'unstable_degrees']
