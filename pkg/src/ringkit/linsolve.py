"""Dense linear solving over fields by Gaussian elimination."""

from .errors import SingularSystemError, UnsupportedRingError

__all__ = ["gaussian_solve"]


def gaussian_solve(ring, lhs, rhs):
    """Solve ``lhs * x = rhs`` over a field, returning the solution vector.

    ``lhs`` is a square matrix given as a list of N rows of N ring elements,
    ``rhs`` a list of N elements.  Arithmetic is exact, so pivoting just
    takes the first row with a nonzero entry in the column; there is no
    magnitude to compare.

    Raises SingularSystemError when the matrix is singular.  The exception
    carries the rank of the coefficient matrix and whether the system is
    still consistent (solvable, but not uniquely).
    """
    if not ring.is_field:
        raise UnsupportedRingError(
            "gaussian elimination needs a field, got %s" % (ring,))
    n = len(lhs)
    if len(rhs) != n or any(len(row) != n for row in lhs):
        raise ValueError("need an N x N matrix and a length-N right-hand side")

    # augmented working copy; rows are mutated in place
    aug = [list(row) + [rhs[i]] for i, row in enumerate(lhs)]

    rank = 0
    pivot_cols = []
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if not ring.is_zero(aug[r][col]):
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = ring.div(ring.one, aug[rank][col])
        row = aug[rank]
        for j in range(col, n + 1):
            row[j] = ring.mul(row[j], inv)
        for r in range(rank + 1, n):
            c = aug[r][col]
            if ring.is_zero(c):
                continue
            other = aug[r]
            for j in range(col, n + 1):
                other[j] = ring.sub(other[j], ring.mul(c, row[j]))
        pivot_cols.append(col)
        rank += 1

    if rank < n:
        consistent = all(ring.is_zero(aug[r][n]) for r in range(rank, n))
        raise SingularSystemError("matrix is singular", rank, consistent)

    # back substitution; pivots are 1 and pivot_cols == range(n) here
    sol = [ring.zero] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n]
        row = aug[i]
        for j in range(i + 1, n):
            acc = ring.sub(acc, ring.mul(row[j], sol[j]))
        sol[i] = acc
    return sol
