"""
ToralKit 유리수 선형대수
sympy 정확 행렬 위의 rref, 영공간, 연립방정식 (부동소수점 없음)
"""

from typing import List, Sequence, Tuple

from sympy import Matrix, QQ, Rational
from sympy.polys.matrices import DomainMatrix

from ..core.errors import ModuleError


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix.zeros(rows, cols)


def eye(n: int) -> Matrix:
    return Matrix.eye(n)


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """기약 행 사다리꼴 (DomainMatrix QQ 위에서)"""
    if m.rows == 0 or m.cols == 0:
        return zeros(m.rows, m.cols), ()
    dm = DomainMatrix.from_Matrix(m).convert_to(QQ)
    reduced, pivots = dm.rref()
    return reduced.to_Matrix(), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> Matrix:
    """영공간 기저 (열)"""
    n = m.cols
    if m.rows == 0:
        return eye(n)
    reduced, pivots = rref(m)
    free = [j for j in range(n) if j not in pivots]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, p in enumerate(pivots):
            basis[p, k] = -reduced[i, f]
    return basis


def column_space(m: Matrix) -> Matrix:
    """열공간 기저 (원래 열 중 피벗 열)"""
    if m.cols == 0 or m.rows == 0:
        return zeros(m.rows, 0)
    _, pivots = rref(m)
    return hstack(m.rows, [m[:, j] for j in pivots])


def solve(a: Matrix, b: Matrix) -> Matrix:
    """A X = B 의 특수해, 해가 없으면 ModuleError"""
    n = a.cols
    if b.rows != a.rows:
        raise ModuleError(f"행 수 불일치: {a.shape} / {b.shape}")
    if b.cols == 0:
        return zeros(n, 0)
    if a.rows == 0:
        return zeros(n, b.cols)
    reduced, pivots = rref(a.row_join(b))
    if any(p >= n for p in pivots):
        raise ModuleError("연립방정식의 해가 없음")
    x = zeros(n, b.cols)
    for i, p in enumerate(pivots):
        x[p, :] = reduced[i, n:]
    return x


def is_solvable(a: Matrix, b: Matrix) -> bool:
    try:
        solve(a, b)
        return True
    except ModuleError:
        return False


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise ModuleError(f"정사각 행렬이 아님: {a.shape}")
    if a.rows == 0:
        return zeros(0, 0)
    if rank(a) != a.rows:
        raise ModuleError("가역 행렬이 아님")
    return solve(a, eye(a.rows))


def complement(a: Matrix, n: int) -> Matrix:
    """열공간의 여공간 기저 (표준 기저 벡터에서 선택)"""
    current = a if a.cols else zeros(n, 0)
    chosen = []
    r = rank(current)
    for j in range(n):
        e = zeros(n, 1)
        e[j, 0] = 1
        trial = current.row_join(e)
        if rank(trial) > r:
            current = trial
            r += 1
            chosen.append(e)
    return hstack(n, chosen)


def hstack(rows: int, blocks: Sequence[Matrix]) -> Matrix:
    result = zeros(rows, 0)
    for block in blocks:
        result = result.row_join(block)
    return result


def vstack(cols: int, blocks: Sequence[Matrix]) -> Matrix:
    result = zeros(0, cols)
    for block in blocks:
        result = result.col_join(block)
    return result


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    result = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        result[r:r + b.rows, c:c + b.cols] = b
        r += b.rows
        c += b.cols
    return result


def eigenspace(s: Matrix, sign: int) -> Matrix:
    """대합 s의 ±1 고유공간 기저"""
    return nullspace(s - sign * eye(s.rows))


def averaged_projection(p: Matrix, s: Matrix) -> Matrix:
    """위수 2 작용 s에 대해 평균한 사영 (p + s p s⁻¹) / 2"""
    return (p + s * p * s) * Rational(1, 2)


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for x in m)


def as_list(m: Matrix) -> List[List[str]]:
    """직렬화용 (유리수를 문자열로)"""
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def from_list(rows: int, cols: int, data) -> Matrix:
    if rows == 0 or cols == 0:
        return zeros(rows, cols)
    return Matrix([[Rational(x) for x in row] for row in data])


def kron(a: Matrix, b: Matrix) -> Matrix:
    """크로네커 곱"""
    result = zeros(a.rows * b.rows, a.cols * b.cols)
    if not (b.rows and b.cols):
        return result
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != 0:
                result[i * b.rows:(i + 1) * b.rows, j * b.cols:(j + 1) * b.cols] = a[i, j] * b
    return result


def flatten(m: Matrix) -> List:
    """행 우선 벡터화"""
    return [m[i, j] for i in range(m.rows) for j in range(m.cols)]
