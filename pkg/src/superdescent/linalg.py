"""Gaussian elimination over a subfield of the ambient field."""


def row_echelon(rows, F):
    """Reduced row echelon form of a list of vectors; returns (rows, pivots)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = F.neg(m[i][c])
                m[i] = [F.add(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, F):
    return len(row_echelon(rows, F)[0])


def kernel(matrix, ncols, F):
    """Basis of {v : matrix . v = 0}; one vector per free column, sorted."""
    ech, pivots = row_echelon(matrix, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(ech, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(tuple(v))
    return basis


def span(basis, scalars, F):
    """All combinations of basis vectors with coefficients from scalars."""
    if not basis:
        return []
    dim = len(basis[0])
    out = [tuple([0] * dim)]
    for b in basis:
        out = [tuple(F.add(x, F.mul(s, y)) for x, y in zip(v, b))
               for v in out for s in scalars]
    return out
