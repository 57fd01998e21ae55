"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Rational elements are gmpy2.mpq (fractions.Fraction when gmpy2 is missing);
prime-field elements are plain ints normalized to [0, p).  No floating point
is used anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

try:
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover
    from fractions import Fraction as _RAT

RATIONALS = "Q"
PRIME_FIELD = "Fp"


class FieldError(ValueError):
    pass


class MixedFieldError(FieldError):
    """An entry does not belong to the matrix's coefficient field."""


class NoPrimitiveRoot(FieldError):
    def __init__(self, n: int, field: "Field"):
        super().__init__(f"no primitive {n}-th root of unity in {field}")
        self.n = n
        self.field = field


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Arithmetic context for Q or F_p.  Instances are hashable and compared
    structurally; all element operations are exact."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == PRIME_FIELD:
            if not _is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not prime")
        elif self.kind == RATIONALS:
            if self.p != 0:
                raise FieldError("rationals take no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    # -- construction -----------------------------------------------------

    @staticmethod
    def rationals() -> "Field":
        return Field(RATIONALS)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(PRIME_FIELD, p)

    @staticmethod
    def parse_spec(text: str) -> "Field":
        """Parse a CLI field spec: "q" or "fp:P"."""
        t = text.strip().lower()
        if t == "q":
            return Field.rationals()
        if t.startswith("fp:"):
            return Field.prime(int(t[3:]))
        raise FieldError(f"bad field spec {text!r} (expected 'q' or 'fp:P')")

    # -- properties -------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0

    def __str__(self):
        return "Q" if self.kind == RATIONALS else f"F{self.p}"

    # -- element arithmetic -----------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == PRIME_FIELD else _RAT(0)

    @property
    def one(self):
        return 1 if self.kind == PRIME_FIELD else _RAT(1)

    def of(self, n) -> object:
        """Coerce an integer (or exact rational over Q) into the field."""
        if self.kind == PRIME_FIELD:
            return int(n) % self.p
        return _RAT(n)

    def check(self, v):
        """Validate that v is a normalized element of this field."""
        if self.kind == PRIME_FIELD:
            if not isinstance(v, int) or not 0 <= v < self.p:
                raise MixedFieldError(f"{v!r} is not an element of {self}")
        else:
            if isinstance(v, (float, complex)):
                raise MixedFieldError(f"{v!r} is not exact")
            if not isinstance(v, (int, type(_RAT(0)))):
                raise MixedFieldError(f"{v!r} is not an element of {self}")
        return v

    def add(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a - b) % self.p
        return a - b

    def mul(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a * b) % self.p
        return a * b

    def neg(self, a):
        if self.kind == PRIME_FIELD:
            return (-a) % self.p
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == PRIME_FIELD:
            return pow(a, self.p - 2, self.p)
        return 1 / _RAT(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def sign_unit(self, k: int):
        """(-1)^k as a field element."""
        return self.of(1 if k % 2 == 0 else -1)

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def parse(self, text: str):
        """Parse a decimal coefficient string; "3/2" allowed over Q."""
        s = str(text).strip()
        if "/" in s:
            num, den = s.split("/")
            if self.kind == PRIME_FIELD:
                return self.div(self.of(int(num)), self.of(int(den)))
            return _RAT(int(num), int(den))
        return self.of(int(s))

    def fmt(self, v) -> str:
        return str(v)

    def random_element(self, rng: random.Random):
        if self.kind == PRIME_FIELD:
            return rng.randrange(self.p)
        return _RAT(rng.randint(-5, 5))

    # -- roots of unity ----------------------------------------------------

    def element_order(self, a) -> int | None:
        """Multiplicative order of a, or None if a is zero."""
        if self.is_zero(a):
            return None
        x = a
        k = 1
        bound = self.p if self.kind == PRIME_FIELD else 2
        while x != self.one:
            x = self.mul(x, a)
            k += 1
            if k > bound:
                return None
        return k

    def primitive_root_of_unity(self, n: int):
        """Some primitive n-th root of unity, or raise NoPrimitiveRoot."""
        if n == 1:
            return self.one
        if self.kind == RATIONALS:
            if n == 2:
                return self.of(-1)
            raise NoPrimitiveRoot(n, self)
        if (self.p - 1) % n != 0:
            raise NoPrimitiveRoot(n, self)
        for c in range(2, self.p):
            if self.element_order(c) == n:
                return c
        raise NoPrimitiveRoot(n, self)

    def is_primitive_root_of_unity(self, w, n: int) -> bool:
        return self.element_order(w) == n
