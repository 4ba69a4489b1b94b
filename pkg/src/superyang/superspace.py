"""Z2-graded linear algebra of C^(1|2n).

Index conventions (the math-to-code dictionary):

* basis indices run 1..2n+1 in every public API, exactly as in the algebra;
  0-based offsets are internal.  e_i and e_{i'} are odd for i = 1..n, e_{n+1}
  is even.  The involution is i' = 2n - i + 2, theta_i = +1 for i <= n+1 and
  -1 above, and kappa = -n - 1/2.
* operators on tensor products are stored as plain sparse matrices in the
  row-major layout: the pair (i, k) maps to row (i-1)*dim + (k-1) (0-based).
  The embedding of a graded tensor x (x) y into the plain matrix algebra uses
  the Koszul rule (x (x) y)(v (x) w) = (-1)^{|y||v|} xv (x) yw; with that rule
  plain matrix multiplication agrees with the graded product, so every
  identity below is checked by ordinary matrix arithmetic.

The two-site operators are the super permutation P = sum e_ij (x) e_ji (-1)^j,
its partial super-transpose Q = sum e_ij (x) e_i'j' (-1)^{ij} theta_i theta_j,
and the rational R-matrix R(u) = 1 - P/u + Q/(u - kappa).
"""

from fractions import Fraction

from .gridcheck import IntMat, pmap, products_equal
from .scalars import Poly, RationalFunction, rat_str


class GradedSpace:
    """The data of C^(1|2n): dimension, parities, involution, thetas, kappa."""

    __slots__ = ("n", "dim", "kappa", "_par", "_theta", "mutated_theta")

    def __init__(self, n, mutate_theta=False):
        if n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.dim = 2 * n + 1
        self.kappa = Fraction(-(2 * n + 1), 2)
        par = [1] * self.dim
        par[n] = 0
        self._par = tuple(par)
        theta = [1 if a <= n else -1 for a in range(self.dim)]
        if mutate_theta:
            theta[n + 1] = 1  # deliberately corrupted sign table (test harness)
        self._theta = tuple(theta)
        self.mutated_theta = mutate_theta

    # 1-based accessors (paper-style indices)
    def parity(self, i):
        return self._par[i - 1]

    def prime(self, i):
        return 2 * self.n - i + 2

    def theta(self, i):
        return self._theta[i - 1]

    # 0-based accessors for inner loops
    def par0(self, a):
        return self._par[a]

    def prime0(self, a):
        return self.dim - 1 - a

    def theta0(self, a):
        return self._theta[a]

    def parities(self):
        return self._par

    def gram(self):
        "The defining bilinear form G = [delta_{ij'} theta_i]."
        g = Mat(self.dim, self.dim)
        for a in range(self.dim):
            g[a, self.prime0(a)] = Fraction(self.theta0(a))
        return g

    def __repr__(self):
        return "GradedSpace(n=%d)" % self.n


def build_space(n, mutate_theta=False):
    return GradedSpace(n, mutate_theta=mutate_theta)


class Mat:
    """Sparse exact matrix over Fraction or RationalFunction entries."""

    __slots__ = ("nrows", "ncols", "d")

    def __init__(self, nrows, ncols, d=None):
        self.nrows = nrows
        self.ncols = ncols
        self.d = dict(d) if d else {}

    @staticmethod
    def eye(size, one=Fraction(1)):
        return Mat(size, size, {(i, i): one for i in range(size)})

    def __getitem__(self, rc):
        return self.d.get(rc, 0)

    def __setitem__(self, rc, v):
        if v:
            self.d[rc] = v
        else:
            self.d.pop(rc, None)

    def items(self):
        return self.d.items()

    def nnz(self):
        return len(self.d)

    def copy(self):
        return Mat(self.nrows, self.ncols, self.d)

    def __add__(self, other):
        out = self.copy()
        for rc, v in other.d.items():
            s = out.d.get(rc, 0) + v
            if s:
                out.d[rc] = s
            else:
                out.d.pop(rc, None)
        return out

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        if not scalar:
            return Mat(self.nrows, self.ncols)
        return Mat(self.nrows, self.ncols, {rc: v * scalar for rc, v in self.d.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = {}
        for (r, c), v in other.d.items():
            rows.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), a in self.d.items():
            for c, b in rows.get(k, ()):
                rc = (r, c)
                s = out.get(rc, 0) + a * b
                if s:
                    out[rc] = s
                else:
                    out.pop(rc, None)
        return Mat(self.nrows, other.ncols, out)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.nrows == other.nrows and self.ncols == other.ncols and self.d == other.d

    def apply(self, vec):
        "Matrix-vector product; vec is a dict {index: value}."
        out = {}
        for (r, c), v in self.d.items():
            if c in vec:
                s = out.get(r, 0) + v * vec[c]
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def scalar_multiple_of_identity(self):
        "Return the scalar if the matrix equals c*Id, else None."
        if self.nrows != self.ncols:
            return None
        c = self.d.get((0, 0), 0)
        for (r, col), v in self.d.items():
            if r != col:
                return None
        for i in range(self.nrows):
            if self.d.get((i, i), 0) != c:
                return None
        return c if c else Fraction(0)

    def map_values(self, fn):
        out = Mat(self.nrows, self.ncols)
        for rc, v in self.d.items():
            w = fn(v)
            if w:
                out.d[rc] = w
        return out

    def __repr__(self):
        return "Mat(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


def super_transpose(space, mat, module_parities=(0,)):
    """Super-transposition t (x) id on the C^(1|2n) leg of a plain matrix on
    V (x) M.

    On matrix units t is e_ij |-> e_{j'i'} (-1)^{ij+i} theta_i theta_j; the
    plain matrix picks up the inverse/forward Koszul factors of the module
    leg, giving

        out[(j',m),(i',m')] = in[(i,m),(j,m')]
                              * (-1)^{ij + i + (m+m')(i+j)} theta_i theta_j.

    With a trivial module (d = 1) this is the involutive anti-automorphism of
    End C^(1|2n) itself, the one with Q = P^{t1} = P^{t2}.
    """
    dim = space.dim
    d = len(module_parities)
    if mat.nrows != dim * d or mat.ncols != dim * d:
        raise ValueError("matrix shape does not match space (x) module")
    out = Mat(mat.nrows, mat.ncols)
    for (r, c), v in mat.items():
        i0, m0 = divmod(r, d)
        j0, m1 = divmod(c, d)
        pi, pj = space.par0(i0), space.par0(j0)
        pm = (module_parities[m0] + module_parities[m1]) & 1
        exp = (pi * pj + pi + pm * (pi + pj)) & 1
        sign = (-1) ** exp * space.theta0(i0) * space.theta0(j0)
        out[space.prime0(j0) * d + m0, space.prime0(i0) * d + m1] = \
            v * sign if sign != 1 else v
    return out


# Two-site operators are kept as term lists ((i,j),(k,l),coeff) standing for
# coeff * e_ij (x) e_kl, so they can be re-embedded into any pair of legs of a
# multiple tensor product with the Koszul signs recomputed each time.

def p_terms(space):
    dim = space.dim
    return [((i, j), (j, i), (-1) ** space.par0(j - 1))
            for i in range(1, dim + 1) for j in range(1, dim + 1)]


def q_terms(space, mutate=False):
    dim = space.dim
    out = []
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            c = (-1) ** (space.parity(i) * space.parity(j)) * space.theta(i) * space.theta(j)
            if mutate and i == 1 and j == 1:
                c = -c  # deliberately corrupted sign (test harness)
            out.append(((i, j), (space.prime(i), space.prime(j)), c))
    return out


def flip_terms(space, terms):
    "Graded swap of the two tensor legs: x (x) y -> (-1)^{|x||y|} y (x) x."
    out = []
    for (ij, kl, c) in terms:
        pij = (space.parity(ij[0]) + space.parity(ij[1])) & 1
        pkl = (space.parity(kl[0]) + space.parity(kl[1])) & 1
        out.append((kl, ij, c * (-1) ** (pij * pkl)))
    return out


def embed_pair(space, terms, lega, legb, nlegs):
    """Plain matrix of sum_t coeff * e_{ij}@lega (x) e_{kl}@legb (x) id on the
    nlegs-fold tensor power of C^(1|2n), with Koszul signs."""
    if not (0 <= lega < legb < nlegs):
        raise ValueError("need 0 <= lega < legb < nlegs")
    dim = space.dim
    other = [t for t in range(nlegs) if t not in (lega, legb)]
    out = Mat(dim ** nlegs, dim ** nlegs)
    # enumerate diagonal values of the identity legs
    def diag_words(k):
        if k == 0:
            yield ()
            return
        for w in diag_words(k - 1):
            for a in range(dim):
                yield w + (a,)
    strides = [dim ** (nlegs - 1 - t) for t in range(nlegs)]
    for (i, j), (k, l), coeff in terms:
        i0, j0, k0, l0 = i - 1, j - 1, k - 1, l - 1
        pij = (space.par0(i0) + space.par0(j0)) & 1
        pkl = (space.par0(k0) + space.par0(l0)) & 1
        for word in diag_words(len(other)):
            col = [0] * nlegs
            row = [0] * nlegs
            for t, a in zip(other, word):
                col[t] = a
                row[t] = a
            row[lega], col[lega] = i0, j0
            row[legb], col[legb] = k0, l0
            # Koszul: each leg operator passes the column indices to its left
            exp = pij * sum(space.par0(col[t]) for t in range(lega))
            exp += pkl * sum(space.par0(col[t]) for t in range(legb))
            r = sum(a * s for a, s in zip(row, strides))
            c = sum(a * s for a, s in zip(col, strides))
            v = out.d.get((r, c), 0) + coeff * (-1) ** (exp & 1)
            if v:
                out.d[(r, c)] = v
            else:
                out.d.pop((r, c), None)
    return out


def build_P_Q_R(space, mutate_q=False):
    """The operators P, Q (over Q) and R(u) = 1 - P/u + Q/(u-kappa) (over
    rational functions) on the two-fold tensor square."""
    P = embed_pair(space, p_terms(space), 0, 1, 2)
    Q = embed_pair(space, q_terms(space, mutate=mutate_q), 0, 1, 2)
    u = Poly.u()
    R = Mat.eye(space.dim ** 2, RationalFunction(1))
    R += P.map_values(lambda c: RationalFunction(-c, u))
    R += Q.map_values(lambda c: RationalFunction(Fraction(c), u - space.kappa))
    return P, Q, R


def cleared_r_intmat(space, P, Q, w):
    """IntMat of 2*w*(w-kappa)*R(w) extended by nothing (pure two-site);
    evaluable at every rational w including the poles of R."""
    w = Fraction(w)
    c_id = 2 * w * (w - space.kappa)
    c_p = -2 * (w - space.kappa)
    c_q = 2 * w
    if c_id.denominator != 1 or c_p.denominator != 1 or c_q.denominator != 1:
        raise ValueError("cleared R-matrix not integral at w=%s" % w)
    size = space.dim ** 2
    ent = {}
    for i in range(size):
        ent[(i, i)] = int(c_id)
    for rc, v in P.items():
        ent[rc] = ent.get(rc, 0) + int(c_p) * int(v)
    for rc, v in Q.items():
        ent[rc] = ent.get(rc, 0) + int(c_q) * int(v)
    return IntMat.from_dict(size, size, ent)


def _ybe_side_intmats(space, P12, Q12, P13, Q13, P23, Q23, u, v):
    def cleared(P, Q, w):
        wK = Fraction(w)
        c_id = 2 * wK * (wK - space.kappa)
        c_p = -2 * (wK - space.kappa)
        c_q = 2 * wK
        size = space.dim ** 3
        ent = {(i, i): int(c_id) for i in range(size)}
        for rc, val in P.items():
            ent[rc] = ent.get(rc, 0) + int(c_p) * int(val)
        for rc, val in Q.items():
            ent[rc] = ent.get(rc, 0) + int(c_q) * int(val)
        return IntMat.from_dict(size, size, ent)
    r12 = cleared(P12, Q12, u - v)
    r13 = cleared(P13, Q13, u)
    r23 = cleared(P23, Q23, v)
    return [r12, r13, r23], [r23, r13, r12]


def check_ybe(space, grid_size=8, mutate_q=False):
    """Verify R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) exactly.

    Both sides are multiplied by u(u-kappa) v(v-kappa) (u-v)(u-v-kappa), which
    clears every denominator and leaves polynomial entries of degree <= 4 per
    variable, so any grid with more than 4 points per side is conclusive.  The
    grid is {1..grid_size}^2, deterministic.
    """
    if grid_size <= 4:
        raise ValueError("grid_size must exceed the cleared degree bound 4")
    legs = {}
    for (a, b) in ((0, 1), (0, 2), (1, 2)):
        legs[(a, b)] = (embed_pair(space, p_terms(space), a, b, 3),
                        embed_pair(space, q_terms(space, mutate=mutate_q), a, b, 3))
    P12, Q12 = legs[(0, 1)]
    P13, Q13 = legs[(0, 2)]
    P23, Q23 = legs[(1, 2)]
    points = [(u, v) for u in range(1, grid_size + 1) for v in range(1, grid_size + 1)]

    def run(pt):
        u, v = pt
        left, right = _ybe_side_intmats(space, P12, Q12, P13, Q13, P23, Q23, u, v)
        return products_equal(left, right)

    results = pmap(run, points)
    witness = None
    for (u, v), res in zip(points, results):
        if res is not None:
            r, c = res
            witness = {"entry": [int(r), int(c)],
                       "row_legs": _split3(space, r), "col_legs": _split3(space, c),
                       "u": rat_str(u), "v": rat_str(v)}
            break
    return {"check": "ybe", "n": space.n, "grid": grid_size,
            "status": "pass" if witness is None else "fail",
            "witness": witness}


def _split3(space, flat):
    d = space.dim
    a, rest = divmod(int(flat), d * d)
    b, c = divmod(rest, d)
    return [a + 1, b + 1, c + 1]


def r_unitarity_scalar(space):
    """The scalar s(u) with R(u) R'(-u) = s(u) * Id, where R' is built on the
    flipped tensor legs.  Recorded empirically; no closed form is asserted."""
    P, Q, R = build_P_Q_R(space)
    Pf = embed_pair(space, flip_terms(space, p_terms(space)), 0, 1, 2)
    Qf = embed_pair(space, flip_terms(space, q_terms(space)), 0, 1, 2)
    u = Poly.u()
    Rf = Mat.eye(space.dim ** 2, RationalFunction(1))
    Rf += Pf.map_values(lambda c: RationalFunction(Fraction(c), u))       # -P'/(-u)
    Rf += Qf.map_values(lambda c: RationalFunction(Fraction(-c), u + space.kappa))
    prod = R @ Rf
    s = prod.scalar_multiple_of_identity()
    if s is None:
        raise AssertionError("R(u) R'(-u) is not scalar")
    return RationalFunction.coerce(s)
