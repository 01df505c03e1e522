"""Exact 2x2 linear algebra over a finite field.

Vectors are pairs (x0, x1) of scalar indices, read as column vectors;
matrices are 4-tuples (a, b, c, d) for [[a, b], [c, d]] acting on column
vectors by left multiplication.  Lines (1-dimensional subspaces) are
identified with their canonical representative: the unique vector on the
line whose first nonzero coordinate is 1.
"""

from __future__ import annotations

ZERO_VEC = (0, 0)
IDENTITY = (1, 0, 0, 1)


class SingularMatrixError(ValueError):
    pass


def mat_mul(F, M, N):
    a, b, c, d = M
    e, f, g, h = N
    add, mul = F.add, F.mul
    return (
        add(mul(a, e), mul(b, g)),
        add(mul(a, f), mul(b, h)),
        add(mul(c, e), mul(d, g)),
        add(mul(c, f), mul(d, h)),
    )


def mat_vec(F, M, v):
    a, b, c, d = M
    x, y = v
    add, mul = F.add, F.mul
    return (add(mul(a, x), mul(b, y)), add(mul(c, x), mul(d, y)))


def det(F, M):
    a, b, c, d = M
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat_inv(F, M):
    a, b, c, d = M
    dt = det(F, M)
    if dt == 0:
        raise SingularMatrixError(f"matrix {M} is singular")
    s = F.inv(dt)
    mul, neg = F.mul, F.neg
    return (mul(s, d), mul(s, neg(b)), mul(s, neg(c)), mul(s, a))


def vec_sub(F, u, v):
    return (F.sub(u[0], v[0]), F.sub(u[1], v[1]))


def fixes_nonzero(F, M) -> bool:
    """True iff M has a nonzero fixed vector, i.e. 1 is an eigenvalue.

    Equivalent to det(M - I) = 0; cross-checked in tests against a scan of
    all q^2 - 1 nonzero vectors.
    """
    a, b, c, d = M
    return det(F, (F.sub(a, 1), b, c, F.sub(d, 1))) == 0


def fixed_vectors(F, M):
    """All nonzero v with Mv = v, by exhaustive scan (test oracle)."""
    out = []
    for x in range(F.q):
        for y in range(F.q):
            if x == 0 and y == 0:
                continue
            v = (x, y)
            if mat_vec(F, M, v) == v:
                out.append(v)
    return out


def all_lines(F):
    """The q+1 canonical line representatives, in a fixed order."""
    return [(1, t) for t in range(F.q)] + [(0, 1)]


def line_of(F, v):
    """Canonical representative of the line spanned by the nonzero vector v."""
    x, y = v
    if x != 0:
        return (1, F.mul(F.inv(x), y))
    if y != 0:
        return (0, 1)
    raise ValueError("the zero vector spans no line")


def in_line(F, v, line) -> bool:
    """Membership of v in the 1-dimensional subspace (0 is in every line)."""
    if v == ZERO_VEC:
        return True
    return line_of(F, v) == line


def fixed_lines(F, M):
    """Lines consisting of fixed vectors of M (eigenvalue exactly 1).

    A line is included iff M fixes its representative pointwise, which by
    linearity means M fixes every vector on the line.  Distinct from the
    invariant lines of M (eigenvectors of any eigenvalue).
    """
    return {L for L in all_lines(F) if mat_vec(F, M, L) == L}
