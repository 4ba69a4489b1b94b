"""Exact scalar tower: rationals, univariate polynomials, reduced rational
functions, and truncated series in 1/u.

All coefficients are `fractions.Fraction`; nothing here is ever floating
point.  RationalFunction values are kept in a canonical form (coprime
numerator/denominator, monic denominator), so `==` is a syntactic check.
"""

from fractions import Fraction

from .linalg import kernel

Rat = Fraction


def rat(p, q=1):
    return Fraction(p, q)


def rat_str(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c):
        return Poly((Fraction(c),))

    @staticmethod
    def u():
        "The monomial u."
        return Poly((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (Fraction(1),)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly(tuple(c / lc for c in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.coeffs)
        d = other.degree
        lc = other.coeffs[-1]
        q = [Fraction(0)] * max(len(num) - d, 0)
        for i in range(len(num) - 1, d - 1, -1):
            c = num[i] / lc
            if c:
                q[i - d] = c
                for j, oc in enumerate(other.coeffs):
                    num[i - d + j] -= c * oc
        return Poly(q), Poly(num[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a):
        "Compose with u + a:  p.shift(a)(u) == p(u + a)."
        a = Fraction(a)
        acc = Poly()
        ua = Poly((a, 1))
        for c in reversed(self.coeffs):
            acc = acc * ua + Poly.const(c)
        return acc

    def to_json(self):
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(obj):
        return Poly(tuple(Fraction(s) for s in obj))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = rat_str(abs(c))
            else:
                mag = "" if abs(c) == 1 else rat_str(abs(c)) + "*"
                term = mag + ("u" if i == 1 else "u^%d" % i)
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def poly_gcd(a, b):
    "Monic gcd of two polynomials (Euclid)."
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


class RationalFunction:
    """Reduced fraction of polynomials: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lc = den.coeffs[-1]
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @staticmethod
    def coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction, Poly)):
            return RationalFunction(x)
        raise TypeError("cannot coerce %r to RationalFunction" % (x,))

    @staticmethod
    def u():
        return RationalFunction(Poly.u())

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def shift(self, a):
        "Argument shift u -> u + a."
        r = RationalFunction.__new__(RationalFunction)
        num, den = self.num.shift(a), self.den.shift(a)
        lc = den.coeffs[-1] if den.coeffs else Fraction(1)
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        r.num, r.den = num, den  # shifting preserves coprimality and reduction
        return r

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole: u = %s" % (x,))
        return self.num(x) / d

    def at_infinity(self):
        "Value at u = infinity; raises if the function has a pole there."
        if self.num.is_zero():
            return Fraction(0)
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            raise ValueError("pole at infinity: deg num > deg den")
        if dn < dd:
            return Fraction(0)
        return self.num.coeffs[-1] / self.den.coeffs[-1]

    def series(self, order):
        return series_expand(self, order)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(obj):
        return RationalFunction(Poly.from_json(obj["num"]), Poly.from_json(obj["den"]))

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


RF = RationalFunction


class SeriesInvU:
    """Truncated series a0 + a1/u + ... + aN/u^N (output/interchange format)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need order+1 coefficients, got %d" % len(coeffs))
        self.order = order
        self.coeffs = coeffs

    def __eq__(self, other):
        if not isinstance(other, SeriesInvU):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def mul(self, other):
        "Truncated product at the smaller order."
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if a:
                for j, b in enumerate(other.coeffs[:order + 1 - i]):
                    out[i + j] += a * b
        return SeriesInvU(order, out)

    def to_json(self):
        return {"order": self.order, "coeffs": [rat_str(c) for c in self.coeffs]}

    def __repr__(self):
        return "SeriesInvU(%d, %s)" % (self.order, list(self.coeffs))


def field_ops(a, b, op):
    """Field operation dispatcher for RationalFunction values."""
    a = RationalFunction.coerce(a)
    b = RationalFunction.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % (op,))


def shift_arg(f, a):
    "The substitution u -> u + a on a RationalFunction."
    return RationalFunction.coerce(f).shift(a)


def series_expand(f, order):
    """Laurent expansion of f at u = infinity through 1/u^order.

    Requires deg num <= deg den (no pole at infinity).
    """
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return SeriesInvU(order, [0] * (order + 1))
    dn, dd = f.num.degree, f.den.degree
    if dn > dd:
        raise ValueError("not a series in 1/u: deg num > deg den")
    # In x = 1/u:  f = (sum n_i x^(dd-i)) / (sum d_i x^(dd-i)); denominator has
    # nonzero constant term, so ordinary power-series division applies.
    nrev = [Fraction(0)] * (dd + 1)
    for i, c in enumerate(f.num.coeffs):
        nrev[dd - i] = c
    drev = [Fraction(0)] * (dd + 1)
    for i, c in enumerate(f.den.coeffs):
        drev[dd - i] = c
    out = []
    acc = nrev + [Fraction(0)] * max(0, order + 1 - len(nrev))
    d0 = drev[0]
    for r in range(order + 1):
        c = acc[r] / d0
        out.append(c)
        if c:
            for j in range(1, min(dd, order - r) + 1):
                acc[r + j] -= c * drev[j]
    return SeriesInvU(order, out)


class ReconstructionError(ValueError):
    """No rational function of the given degree bounds fits the samples."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


def rational_reconstruct(samples, num_deg, den_deg):
    """Cauchy interpolation: the unique reduced rational function with
    deg num <= num_deg, deg den <= den_deg through the given (point, value)
    samples.

    Needs at least num_deg + den_deg + 2 samples at pairwise-distinct points;
    the result is verified against every sample and a ReconstructionError
    (carrying the first failing point) is raised on inconsistency.
    """
    pts = [Fraction(x) for x, _ in samples]
    vals = [Fraction(y) for _, y in samples]
    if len(set(pts)) != len(pts):
        raise ValueError("sample points must be pairwise distinct")
    need = num_deg + den_deg + 2
    if len(samples) < need:
        raise ValueError("need at least %d samples, got %d" % (need, len(samples)))
    # Homogeneous system p(x_i) - y_i q(x_i) = 0 over the first
    # num_deg+den_deg+1 samples; any nonzero kernel vector gives a candidate.
    ncols = num_deg + den_deg + 2
    rows = []
    for x, y in zip(pts[:ncols - 1], vals[:ncols - 1]):
        row = []
        p = Fraction(1)
        for _ in range(num_deg + 1):
            row.append(p)
            p *= x
        q = Fraction(1)
        for _ in range(den_deg + 1):
            row.append(-y * q)
            q *= x
        rows.append(row)
    basis = kernel(rows, ncols)
    cand = None
    for vec in basis:
        den = Poly(vec[num_deg + 1:])
        if not den.is_zero():
            cand = (Poly(vec[:num_deg + 1]), den)
            break
    if cand is None:
        raise ReconstructionError("degenerate system: every solution has zero denominator",
                                  point=pts[0])
    f = RationalFunction(*cand)
    for x, y in zip(pts, vals):
        d = f.den(x)
        if d == 0 or f.num(x) / d != y:
            raise ReconstructionError(
                "no rational function with degree bounds (%d, %d) fits the samples; "
                "first failing point u = %s" % (num_deg, den_deg, x),
                point=x)
    return f
