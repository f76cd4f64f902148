"""BiHom-Lie algebras given by structure constants and two twist matrices.

An algebra is (L, bracket, alpha, beta): bracket via the table c[i][j][s]
(so [e_i, e_j] = sum_s c[i][j][s] e_s, 0-based storage, 1-based reporting),
twists via n x n matrices whose columns hold basis images. Construction does
not enforce the axioms; the check_* operations produce diagnostics so that
candidate non-algebras can be represented and rejected.

Every axiom is evaluated by two independent routes: once through the
structure-constant identities (sums over the c/a/b tables) and once through
direct evaluation on basis tuples via matrix application. check_all compares
the two verdicts and refuses to return if they ever disagree; the redundancy
exists because the index bookkeeping of the twisted Jacobi sum is easy to
get wrong in exactly one of the two forms.
"""

from .fields import QQ, FieldMismatchError
from .linalg import Matrix, invert, is_invertible


class CrossCheckError(AssertionError):
    """The two axiom-evaluation routes disagreed; a bug, never user error."""


class NotLieError(ValueError):
    """Input bracket fails classical skew-symmetry or the Jacobi identity."""


class TwistError(ValueError):
    """Twist maps fail a constructor precondition."""


class AxiomReport:
    """Outcome of the four axiom checks with the first violating indices."""

    __slots__ = ("commuting", "skew_symmetric", "bihom_jacobi",
                 "multiplicative", "first_violation")

    def __init__(self, commuting, skew_symmetric, bihom_jacobi,
                 multiplicative, first_violation):
        self.commuting = commuting
        self.skew_symmetric = skew_symmetric
        self.bihom_jacobi = bihom_jacobi
        self.multiplicative = multiplicative
        self.first_violation = first_violation

    @property
    def passed(self):
        return (self.commuting and self.skew_symmetric
                and self.bihom_jacobi and self.multiplicative)

    def __repr__(self):
        if self.passed:
            return "AxiomReport(passed)"
        return "AxiomReport(commuting=%s, skew=%s, jacobi=%s, mult=%s, first=%r)" % (
            self.commuting, self.skew_symmetric, self.bihom_jacobi,
            self.multiplicative, self.first_violation)


def structure_table(n, entries, field):
    """Dense n^3 table from a sparse dict {(i,j,k): value}, 1-based keys."""
    zero = field.zero()
    table = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), value in entries.items():
        if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
            raise ValueError("bracket index out of range: %r" % ((i, j, k),))
        table[i - 1][j - 1][k - 1] = field.coerce(value)
    return tuple(tuple(tuple(r) for r in plane) for plane in table)


class BiHomLieAlgebra:

    __slots__ = ("n", "field", "structure", "alpha", "beta")

    def __init__(self, structure, alpha, beta, field=None):
        if field is None:
            field = alpha.field if isinstance(alpha, Matrix) else QQ
        n = len(structure)
        table = tuple(
            tuple(tuple(field.coerce(x) for x in row) for row in plane)
            for plane in structure)
        if any(len(plane) != n or any(len(row) != n for row in plane)
               for plane in table):
            raise ValueError("structure table is not n x n x n")
        if not isinstance(alpha, Matrix):
            alpha = Matrix(alpha, field)
        if not isinstance(beta, Matrix):
            beta = Matrix(beta, field)
        for name, m in (("alpha", alpha), ("beta", beta)):
            if m.rows != n or m.cols != n:
                raise ValueError("%s is not %d x %d" % (name, n, n))
            if m.field != field:
                raise FieldMismatchError("%s field mismatch" % name)
        self.n = n
        self.field = field
        self.structure = table
        self.alpha = alpha
        self.beta = beta

    @classmethod
    def from_brackets(cls, n, entries, alpha, beta, field=QQ):
        return cls(structure_table(n, entries, field), alpha, beta, field)

    # --- bracket evaluation -------------------------------------------------

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a coordinate tuple; i, j are 0-based here."""
        return self.structure[i][j]

    def bracket(self, x, y):
        if len(x) != self.n or len(y) != self.n:
            raise ValueError("vector length mismatch")
        zero = self.field.zero()
        x = [self.field.coerce(v) for v in x]
        y = [self.field.coerce(v) for v in y]
        out = [zero] * self.n
        for i in range(self.n):
            if x[i] == zero:
                continue
            for j in range(self.n):
                if y[j] == zero:
                    continue
                coeff = x[i] * y[j]
                row = self.structure[i][j]
                for s in range(self.n):
                    out[s] = out[s] + coeff * row[s]
        return tuple(out)

    def is_regular(self):
        return is_invertible(self.alpha) and is_invertible(self.beta)

    # --- axiom checks, each along two independent routes --------------------

    def check_commuting(self):
        return (self.alpha * self.beta) == (self.beta * self.alpha)

    def check_skew_symmetry(self):
        """Twisted skew-symmetry. Returns (ok, first_violation)."""
        n, zero = self.n, self.field.zero()
        a, b, c = self.alpha.entries, self.beta.entries, self.structure
        table_verdict, table_first = True, None
        for i in range(n):
            for j in range(n):
                for s in range(n):
                    total = zero
                    for p in range(n):
                        for q in range(n):
                            total = total + (b[p][i] * a[q][j]
                                             + b[p][j] * a[q][i]) * c[p][q][s]
                    if total != zero and table_verdict:
                        table_verdict = False
                        table_first = ("skew", (i + 1, j + 1, s + 1), total)
        basis_verdict = True
        for i in range(n):
            bi = self.beta.apply(_unit(n, i, self.field))
            ai = self.alpha.apply(_unit(n, i, self.field))
            for j in range(i, n):
                bj = self.beta.apply(_unit(n, j, self.field))
                aj = self.alpha.apply(_unit(n, j, self.field))
                lhs = self.bracket(bi, aj)
                rhs = self.bracket(bj, ai)
                if any(u + v != zero for u, v in zip(lhs, rhs)):
                    basis_verdict = False
        if table_verdict != basis_verdict:
            raise CrossCheckError("skew-symmetry routes disagree")
        return table_verdict, table_first

    def check_bihom_jacobi(self):
        """Twisted Jacobi identity. Returns (ok, first_violation)."""
        n, zero = self.n, self.field.zero()
        a, b, c = self.alpha.entries, self.beta.entries, self.structure
        beta2 = (self.beta * self.beta).entries
        # inner[j][k][l] = sum_{q,s} b_{qj} a_{sk} c_{qs}^l, then the full
        # quintuple sum is sum_{p,l} beta2_{pi} inner[j][k][l] c_{pl}^r
        # plus its two cyclic shifts of (i,j,k); this factoring evaluates
        # the same polynomial with fewer multiplications.
        inner = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for j in range(n):
            for k in range(n):
                for q in range(n):
                    if b[q][j] == zero:
                        continue
                    for s in range(n):
                        coeff = b[q][j] * a[s][k]
                        if coeff == zero:
                            continue
                        row = c[q][s]
                        for l in range(n):
                            inner[j][k][l] = inner[j][k][l] + coeff * row[l]

        def outer(i, j, k, r):
            total = zero
            for p in range(n):
                if beta2[p][i] == zero:
                    continue
                for l in range(n):
                    total = total + beta2[p][i] * inner[j][k][l] * c[p][l][r]
            return total

        table_verdict, table_first = True, None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for r in range(n):
                        total = (outer(i, j, k, r) + outer(j, k, i, r)
                                 + outer(k, i, j, r))
                        if total != zero:
                            table_verdict = False
                            if table_first is None:
                                table_first = ("jacobi",
                                               (i + 1, j + 1, k + 1, r + 1),
                                               total)
        basis_verdict = True
        units = [_unit(n, i, self.field) for i in range(n)]
        b2 = [(self.beta * self.beta).apply(u) for u in units]
        bu = [self.beta.apply(u) for u in units]
        au = [self.alpha.apply(u) for u in units]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    t1 = self.bracket(b2[i], self.bracket(bu[j], au[k]))
                    t2 = self.bracket(b2[j], self.bracket(bu[k], au[i]))
                    t3 = self.bracket(b2[k], self.bracket(bu[i], au[j]))
                    if any(u + v + w != zero for u, v, w in zip(t1, t2, t3)):
                        basis_verdict = False
        if table_verdict != basis_verdict:
            raise CrossCheckError("BiHom-Jacobi routes disagree")
        return table_verdict, table_first

    def check_multiplicative(self):
        """Both twists are bracket endomorphisms. Returns (ok, first)."""
        n, zero = self.n, self.field.zero()
        c = self.structure
        table_verdict, table_first = True, None
        for name, m in (("alpha", self.alpha.entries),
                        ("beta", self.beta.entries)):
            for i in range(n):
                for j in range(n):
                    for s in range(n):
                        lhs = zero
                        for k in range(n):
                            lhs = lhs + c[i][j][k] * m[s][k]
                        rhs = zero
                        for p in range(n):
                            if m[p][i] == zero:
                                continue
                            for q in range(n):
                                rhs = rhs + m[p][i] * m[q][j] * c[p][q][s]
                        if lhs != rhs and table_verdict:
                            table_verdict = False
                            table_first = ("multiplicative-" + name,
                                           (i + 1, j + 1, s + 1), lhs - rhs)
        basis_verdict = True
        units = [_unit(n, i, self.field) for i in range(n)]
        for m in (self.alpha, self.beta):
            for i in range(n):
                for j in range(n):
                    lhs = m.apply(self.bracket_basis(i, j))
                    rhs = self.bracket(m.apply(units[i]), m.apply(units[j]))
                    if lhs != rhs:
                        basis_verdict = False
        if table_verdict != basis_verdict:
            raise CrossCheckError("multiplicativity routes disagree")
        return table_verdict, table_first

    def check_all(self):
        commuting = self.check_commuting()
        skew, skew_first = self.check_skew_symmetry()
        jacobi, jacobi_first = self.check_bihom_jacobi()
        mult, mult_first = self.check_multiplicative()
        first = None
        if not commuting:
            first = ("commuting", (), None)
        elif not skew:
            first = skew_first
        elif not jacobi:
            first = jacobi_first
        elif not mult:
            first = mult_first
        return AxiomReport(commuting, skew, jacobi, mult, first)

    def __eq__(self, other):
        return (isinstance(other, BiHomLieAlgebra)
                and self.field == other.field
                and self.structure == other.structure
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash((self.field, self.structure, self.alpha, self.beta))

    def __repr__(self):
        return "BiHomLieAlgebra(n=%d, field=%r)" % (self.n, self.field)


def _unit(n, i, field):
    v = [field.zero()] * n
    v[i] = field.one()
    return tuple(v)


# --- classical Lie helpers (inputs/outputs of the twist constructions) ------

def classical_lie_check(table, field):
    """(skew_ok, jacobi_ok) for a plain Lie structure table."""
    n = len(table)
    zero = field.zero()
    skew = all(
        table[i][j][s] + table[j][i][s] == zero
        for i in range(n) for j in range(n) for s in range(n))

    def br(x, y):
        out = [zero] * n
        for i in range(n):
            for j in range(n):
                coeff = x[i] * y[j]
                if coeff == zero:
                    continue
                for s in range(n):
                    out[s] = out[s] + coeff * table[i][j][s]
        return tuple(out)

    jacobi = True
    units = [_unit(n, i, field) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                t1 = br(units[i], br(units[j], units[k]))
                t2 = br(units[j], br(units[k], units[i]))
                t3 = br(units[k], br(units[i], units[j]))
                if any(a + b + c != zero for a, b, c in zip(t1, t2, t3)):
                    jacobi = False
    return skew, jacobi


def _is_bracket_morphism(table, m, field):
    n = len(table)
    zero = field.zero()
    for i in range(n):
        for j in range(n):
            # m([e_i,e_j]) vs [m e_i, m e_j] under the classical table
            lhs = m.apply(table[i][j])
            rhs = [zero] * n
            for p in range(n):
                for q in range(n):
                    coeff = m.entries[p][i] * m.entries[q][j]
                    if coeff == zero:
                        continue
                    for s in range(n):
                        rhs[s] = rhs[s] + coeff * table[p][q][s]
            if list(lhs) != rhs:
                return False
    return True


def yau_twist(table, alpha, beta, field=QQ):
    """BiHom-Lie algebra with bracket [x,y] = [alpha(x), beta(y)]_classical.

    The input is a classical Lie structure table; alpha and beta must commute
    and be endomorphisms of that bracket. The output passes check_all by the
    twisting construction, but this is tested, not assumed.
    """
    n = len(table)
    table = tuple(tuple(tuple(field.coerce(x) for x in row) for row in plane)
                  for plane in table)
    if not isinstance(alpha, Matrix):
        alpha = Matrix(alpha, field)
    if not isinstance(beta, Matrix):
        beta = Matrix(beta, field)
    skew, jacobi = classical_lie_check(table, field)
    if not (skew and jacobi):
        raise NotLieError("input table is not a Lie algebra "
                          "(skew=%s, jacobi=%s)" % (skew, jacobi))
    if alpha * beta != beta * alpha:
        raise TwistError("twist maps do not commute")
    for name, m in (("alpha", alpha), ("beta", beta)):
        if not _is_bracket_morphism(table, m, field):
            raise TwistError("%s is not a morphism of the input bracket" % name)
    zero = field.zero()
    a, b = alpha.entries, beta.entries
    new = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for p in range(n):
                if a[p][i] == zero:
                    continue
                for q in range(n):
                    coeff = a[p][i] * b[q][j]
                    if coeff == zero:
                        continue
                    for s in range(n):
                        new[i][j][s] = new[i][j][s] + coeff * table[p][q][s]
    return BiHomLieAlgebra(new, alpha, beta, field)


def induced_lie(L):
    """Classical structure table [x,y]' = [alpha^-1 x, beta^-1 y]; regular only."""
    if not L.is_regular():
        raise TwistError("induced Lie bracket needs bijective twist maps")
    ai = invert(L.alpha).entries
    bi = invert(L.beta).entries
    n, zero = L.n, L.field.zero()
    new = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for p in range(n):
                if ai[p][i] == zero:
                    continue
                for q in range(n):
                    coeff = ai[p][i] * bi[q][j]
                    if coeff == zero:
                        continue
                    row = L.structure[p][q]
                    for s in range(n):
                        new[i][j][s] = new[i][j][s] + coeff * row[s]
    return tuple(tuple(tuple(r) for r in plane) for plane in new)


def heisenberg(m, a, x, b_list, y_list, field=QQ):
    """Twisted Heisenberg algebra on 2m+1 dimensions.

    Basis order (X_1..X_m, Y_1..Y_m, Z). Built as the Yau twist of the
    classical Heisenberg bracket [X_i, Y_i] = Z by the diagonal maps
    alpha = diag(b_1..b_m, a/b_1..a/b_m, a), beta = diag(y_1.., x/y_1.., x);
    the resulting brackets are [X_i,Y_i] = b_i (x/y_i) Z and
    [Y_i,X_i] = -y_i (a/b_i) Z.
    """
    a = field.coerce(a)
    x = field.coerce(x)
    b_list = [field.coerce(v) for v in b_list]
    y_list = [field.coerce(v) for v in y_list]
    if len(b_list) != m or len(y_list) != m:
        raise ValueError("need m values for b and for y")
    zero = field.zero()
    if a == zero or x == zero or any(v == zero for v in b_list + y_list):
        raise ValueError("all twist parameters must be nonzero")
    n = 2 * m + 1
    one = field.one()
    table = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        table[i][m + i][n - 1] = one
        table[m + i][i][n - 1] = -one
    diag = b_list + [a / b for b in b_list] + [a]
    alpha = Matrix([[diag[i] if i == j else zero for j in range(n)]
                    for i in range(n)], field)
    diag = y_list + [x / y for y in y_list] + [x]
    beta = Matrix([[diag[i] if i == j else zero for j in range(n)]
                   for i in range(n)], field)
    return yau_twist(table, alpha, beta, field)


def derivation_extension(table, D, a, b, field=QQ):
    """Extend a Lie algebra by a scaled-derivation direction.

    The input table is classical; D must satisfy the scaled Leibniz identity
    b*D([u,v]) = a*[D(u), v] + a*[u, D(v)] for the classical bracket. The
    result lives on n+1 dimensions with D adjoined as the last basis vector:
    brackets [e_i, D] = -b*D(e_i), [D, e_j] = a*D(e_j), twists extend the
    identity on the original space by alpha(D) = a*D and beta(D) = b*D.
    The constructed algebra is axiom-checked by the caller's tests, not here.
    """
    n = len(table)
    a = field.coerce(a)
    b = field.coerce(b)
    zero = field.zero()
    table = tuple(tuple(tuple(field.coerce(v) for v in row) for row in plane)
                  for plane in table)
    if not isinstance(D, Matrix):
        D = Matrix(D, field)
    skew, jacobi = classical_lie_check(table, field)
    if not (skew and jacobi):
        raise NotLieError("input table is not a Lie algebra")

    def br(x, y):
        out = [zero] * n
        for i in range(n):
            for j in range(n):
                coeff = x[i] * y[j]
                if coeff == zero:
                    continue
                for s in range(n):
                    out[s] = out[s] + coeff * table[i][j][s]
        return tuple(out)

    units = [_unit(n, i, field) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = tuple(b * v for v in D.apply(table[i][j]))
            rhs = tuple(a * (u + v) for u, v in
                        zip(br(D.apply(units[i]), units[j]),
                            br(units[i], D.apply(units[j]))))
            if lhs != rhs:
                raise ValueError(
                    "D is not a scaled derivation: fails at basis pair "
                    "(%d, %d)" % (i + 1, j + 1))
    ntot = n + 1
    new = [[[zero] * ntot for _ in range(ntot)] for _ in range(ntot)]
    for i in range(n):
        for j in range(n):
            for s in range(n):
                new[i][j][s] = table[i][j][s]
    for i in range(n):
        di = D.apply(units[i])
        for s in range(n):
            new[i][n][s] = -b * di[s]
            new[n][i][s] = a * di[s]
    one = field.one()
    alpha = [[one if i == j else zero for j in range(ntot)] for i in range(ntot)]
    beta = [[one if i == j else zero for j in range(ntot)] for i in range(ntot)]
    alpha[n][n] = a
    beta[n][n] = b
    return BiHomLieAlgebra(new, Matrix(alpha, field), Matrix(beta, field),
                           field)


def direct_sum(A, B):
    """Block direct sum; each summand embeds as an ideal."""
    if A.field != B.field:
        raise FieldMismatchError("direct sum needs a common field")
    field = A.field
    zero = field.zero()
    n = A.n + B.n
    new = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(A.n):
        for j in range(A.n):
            for s in range(A.n):
                new[i][j][s] = A.structure[i][j][s]
    for i in range(B.n):
        for j in range(B.n):
            for s in range(B.n):
                new[A.n + i][A.n + j][A.n + s] = B.structure[i][j][s]

    def block(m1, m2):
        out = [[zero] * n for _ in range(n)]
        for i in range(A.n):
            for j in range(A.n):
                out[i][j] = m1.entries[i][j]
        for i in range(B.n):
            for j in range(B.n):
                out[A.n + i][A.n + j] = m2.entries[i][j]
        return Matrix(out, field)

    return BiHomLieAlgebra(new, block(A.alpha, B.alpha),
                           block(A.beta, B.beta), field)
