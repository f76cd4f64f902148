"""Exact scalar arithmetic: the rationals and prime fields F_p.

Every value the library touches is either a ``fractions.Fraction`` (kept in
lowest terms with positive denominator by the stdlib) or an ``FpElement``.
A field descriptor object (``QQ`` or ``GF(p)``) knows how to build, parse
and format its scalars; matrices and algebras carry one descriptor and
refuse to mix scalars from different fields.
"""

from fractions import Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields meet in one operation."""


class ReductionError(ValueError):
    """Raised when rational data cannot be reduced modulo the requested prime."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """Residue modulo a prime. Immutable; operations stay within one modulus."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatchError(
                    "mixed moduli %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return (isinstance(other, FpElement)
                and self.p == other.p and self.value == other.value)

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "FpElement(%d, p=%d)" % (self.value, self.p)


class RationalField:
    """Descriptor for the rational numbers."""

    name = "rational"
    characteristic = 0

    def __call__(self, num, den=1):
        return Fraction(num, den)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def contains(self, x):
        return isinstance(x, (Fraction, int))

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return parse_scalar(x, self)
        raise FieldMismatchError("not a rational scalar: %r" % (x,))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Descriptor for F_p, p prime."""

    characteristic = None  # set per instance

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = p
        self.name = "fp"
        self.characteristic = p

    def __call__(self, value):
        return FpElement(value, self.p)

    def zero(self):
        return FpElement(0, self.p)

    def one(self):
        return FpElement(1, self.p)

    def contains(self, x):
        return isinstance(x, FpElement) and x.p == self.p

    def coerce(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatchError(
                    "element of F_%d used in F_%d" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, Fraction):
            return reduce_fraction_mod(x, self.p)
        if isinstance(x, str):
            return parse_scalar(x, self)
        raise FieldMismatchError("not an F_%d scalar: %r" % (self.p, x))

    def elements(self):
        return [FpElement(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()

_gf_cache = {}


def GF(p):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def reduce_fraction_mod(x, p):
    """Image of a rational in F_p; the denominator must be coprime to p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ReductionError(
            "denominator of %s is divisible by %d" % (x, p))
    den_inv = pow(x.denominator % p, p - 2, p)
    return FpElement(x.numerator * den_inv, p)


def parse_scalar(text, field):
    """Parse an exact value string: an integer or "num/den"."""
    text = text.strip()
    try:
        if "/" in text:
            num_s, den_s = text.split("/")
            num, den = int(num_s), int(den_s)
            if den == 0:
                raise ValueError
            value = Fraction(num, den)
        else:
            value = Fraction(int(text))
    except ValueError:
        raise ValueError("not an exact scalar string: %r" % (text,)) from None
    return field.coerce(value)


def format_scalar(x):
    """Exact string form, inverse to parse_scalar on canonical values."""
    if isinstance(x, FpElement):
        return str(x.value)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def field_of_scalar(x):
    if isinstance(x, FpElement):
        return GF(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise FieldMismatchError("not a field scalar: %r" % (x,))
