"""Integer row reduction for maps between free abelian groups.

A map Z^r -> Z^s is given by an r x s matrix whose rows are basis images.
"""

from __future__ import annotations


def echelon(rows, ncols):
    """Return (H, U, pivots) with H = U * rows, U unimodular, H in row echelon form.

    Pivot entries of H are positive; zero rows of H sit at the bottom.
    """
    H = [list(r) for r in rows]
    nrows = len(H)
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    pivots = []
    top = 0
    for col in range(ncols):
        if top >= nrows:
            break
        while True:
            live = [r for r in range(top, nrows) if H[r][col]]
            if not live:
                break
            best = min(live, key=lambda r: abs(H[r][col]))
            H[top], H[best] = H[best], H[top]
            U[top], U[best] = U[best], U[top]
            clean = True
            for r in range(top + 1, nrows):
                if H[r][col]:
                    q = H[r][col] // H[top][col]
                    H[r] = [x - q * y for x, y in zip(H[r], H[top])]
                    U[r] = [x - q * y for x, y in zip(U[r], U[top])]
                    if H[r][col]:
                        clean = False
            if clean:
                break
        if H[top][col]:
            if H[top][col] < 0:
                H[top] = [-x for x in H[top]]
                U[top] = [-x for x in U[top]]
            pivots.append(col)
            top += 1
    return H, U, pivots


def left_kernel(rows, ncols):
    """Basis of {x : x * rows = 0}."""
    H, U, pivots = echelon(rows, ncols)
    return [U[i] for i in range(len(pivots), len(H))]


def is_surjective(rows, ncols) -> bool:
    if ncols == 0:
        return True
    H, _, pivots = echelon(rows, ncols)
    return len(pivots) == ncols and all(H[i][i] == 1 for i in range(ncols))


def solve_left(rows, ncols, target):
    """Some integer x with x * rows = target, or None."""
    H, U, pivots = echelon(rows, ncols)
    y = []
    for i, col in enumerate(pivots):
        rest = target[col] - sum(y[t] * H[t][col] for t in range(i))
        if rest % H[i][col]:
            return None
        y.append(rest // H[i][col])
    if any(sum(y[t] * H[t][c] for t in range(len(y))) != target[c] for c in range(ncols)):
        return None
    x = [0] * len(rows)
    for t, coef in enumerate(y):
        if coef:
            x = [a + coef * b for a, b in zip(x, U[t])]
    return x


def apply(rows, x):
    """x * rows."""
    ncols = len(rows[0]) if rows else 0
    return [sum(x[i] * rows[i][c] for i in range(len(rows))) for c in range(ncols)]


def span_equal(basis_a, basis_b, ncols) -> bool:
    """Whether two families generate the same sublattice of Z^ncols."""
    Ha = [r for r in echelon(basis_a, ncols)[0] if any(r)]
    Hb = [r for r in echelon(basis_b, ncols)[0] if any(r)]
    return hermite_normal(Ha, ncols) == hermite_normal(Hb, ncols)


def hermite_normal(rows, ncols):
    """Reduced echelon form: entries above each pivot reduced into [0, pivot)."""
    H, _, pivots = echelon(rows, ncols)
    H = [r for r in H if any(r)]
    for i, col in enumerate(pivots):
        for r in range(i):
            q = H[r][col] // H[i][col]
            if q:
                H[r] = [x - q * y for x, y in zip(H[r], H[i])]
    return H
