"""Dense exact linear algebra over any field-like scalar.

Every routine works for scalars supporting +, -, *, /, == and truth-testing
(zero is falsy): `fractions.Fraction` and `Cyclotomic` both qualify.  Matrices
are lists of row lists.  Sizes here are desk scale, so plain Gaussian
elimination with first-nonzero pivoting is used throughout; pivot choice is
deterministic, which several callers rely on for reproducible bases.
"""

from fractions import Fraction

from .errors import InternalConsistencyError


def mat_mul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        arow = a[i]
        row = []
        for j in range(cols):
            acc = arow[0] * b[0][j]
            for k in range(1, mid):
                acc = acc + arow[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot_columns).

    Input rows are not modified.  Zero rows are dropped from the output.
    """
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    _, pivots = rref(rows, ncols)
    return len(pivots)


def nullspace(rows, ncols, one=Fraction(1)):
    """Basis of the right nullspace, one vector per free column.

    The basis is deterministic: free columns are visited in ascending order
    and each vector has `one` at its free column.
    """
    zero = one - one
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for prow, pcol in zip(red, pivots):
            vec[pcol] = zero - prow[free]
        basis.append(vec)
    return basis


def solve(a_rows, b, ncols=None):
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    if ncols is None:
        ncols = len(a_rows[0]) if a_rows else 0
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None  # pivot in the constant column: inconsistent
    zero_template = None
    for row in a_rows:
        for x in row:
            zero_template = x - x
            break
        if zero_template is not None:
            break
    if zero_template is None:
        zero_template = b[0] - b[0]
    sol = [zero_template] * ncols
    for prow, pcol in zip(red, pivots):
        sol[pcol] = prow[ncols]
    return sol


def det(a):
    """Exact determinant by fraction-producing elimination."""
    n = len(a)
    work = [list(r) for r in a]
    sign_flip = False
    result = None
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            x = work[0][0]
            return x - x  # singular: zero of the right type
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            sign_flip = not sign_flip
        piv = work[c][c]
        result = piv if result is None else result * piv
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] / piv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    if sign_flip:
        result = (result - result) - result
    return result


def identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def charpoly(a, one):
    """Coefficients of det(sI - A), constant term first (Faddeev-LeVerrier)."""
    n = len(a)
    zero = one - one
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = mat_mul(a, m)
        ck = coeffs[n - k + 1]
        for i in range(n):
            m[i][i] = m[i][i] + ck
        am = mat_mul(a, m)
        tr = am[0][0]
        for i in range(1, n):
            tr = tr + am[i][i]
        coeffs[n - k] = zero - tr * Fraction(1, k)
    return coeffs


def inverse(a, one):
    """Exact matrix inverse via the characteristic polynomial."""
    n = len(a)
    cp = charpoly(a, one)
    if not cp[0]:
        raise ZeroDivisionError("matrix is singular")
    # A^-1 = -(A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I) / c_0
    acc = identity(n, one)
    for k in range(n - 1, 0, -1):
        am = mat_mul(a, acc)
        for i in range(n):
            am[i][i] = am[i][i] + cp[k]
        acc = am
    factor = (one - one - one) / cp[0]  # -1/c_0
    return [[x * factor for x in row] for row in acc]


class RowSpan:
    """Incremental echelon form for membership and rank queries."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []  # kept in echelon form, pivot coeff 1
        self.pivot_cols = []

    def _reduce(self, vec):
        vec = list(vec)
        for row, pcol in zip(self.rows, self.pivot_cols):
            if vec[pcol]:
                f = vec[pcol]
                vec = [x - f * y for x, y in zip(vec, row)]
        return vec

    def contains(self, vec):
        return not any(self._reduce(vec))

    def add(self, vec):
        """Insert a vector; returns True when it enlarged the span."""
        red = self._reduce(vec)
        lead = None
        for c, x in enumerate(red):
            if x:
                lead = c
                break
        if lead is None:
            return False
        inv = red[lead]
        red = [x / inv for x in red]
        for i, (row, pcol) in enumerate(zip(self.rows, self.pivot_cols)):
            if row[lead]:
                f = row[lead]
                self.rows[i] = [x - f * y for x, y in zip(row, red)]
        # keep rows sorted by pivot column so iteration order is stable
        pos = 0
        while pos < len(self.pivot_cols) and self.pivot_cols[pos] < lead:
            pos += 1
        self.rows.insert(pos, red)
        self.pivot_cols.insert(pos, lead)
        return True

    @property
    def rank(self):
        return len(self.rows)


def require_square(a, what="matrix"):
    if any(len(row) != len(a) for row in a):
        raise InternalConsistencyError(f"{what} is not square")
