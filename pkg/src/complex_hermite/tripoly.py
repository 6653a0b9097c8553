"""Exact polynomials in the commuting symbols z, zb (conjugate of z) and nu.

Coefficients are Python integers, so every operation here is exact.  The
conjugate ``zb`` is an independent symbol until numerical evaluation, where
it is replaced by ``conj(z)``.
"""
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

Exponent = Tuple[int, int, int]


class TriPoly:
    """Sparse polynomial ``sum c[a, b, c] * z**a * zb**b * nu**c``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] = None):
        clean: Dict[Exponent, int] = {}
        for key, coef in (terms or {}).items():
            a, b, c = key
            if min(a, b, c) < 0:
                raise ValueError(f"negative exponent in {key}")
            if not isinstance(coef, int):
                raise TypeError("coefficients must be integers")
            if coef:
                clean[(int(a), int(b), int(c))] = clean.get(key, 0) + coef
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def constant(cls, value: int) -> "TriPoly":
        return cls({(0, 0, 0): value})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coef: int = 1) -> "TriPoly":
        return cls({(a, b, c): coef})

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, a: int, b: int, c: int) -> int:
        return self._terms.get((a, b, c), 0)

    def degree(self) -> int:
        """Total degree in (z, zb); -1 for the zero polynomial."""
        return max((a + b for a, b, _ in self._terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, int):
            other = TriPoly.constant(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = TriPoly.constant(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return TriPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TriPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TriPoly.constant(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TriPoly({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, TriPoly):
            return NotImplemented
        out: Dict[Exponent, int] = {}
        for (a1, b1, c1), v1 in self._terms.items():
            for (a2, b2, c2), v2 in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0) + v1 * v2
        return TriPoly(out)

    __rmul__ = __mul__

    def shift(self, da: int = 0, db: int = 0, dc: int = 0) -> "TriPoly":
        """Multiply by the monomial ``z**da * zb**db * nu**dc``."""
        return TriPoly({(a + da, b + db, c + dc): v for (a, b, c), v in self._terms.items()})

    def d_z(self) -> "TriPoly":
        return TriPoly({(a - 1, b, c): a * v for (a, b, c), v in self._terms.items() if a})

    def d_zbar(self) -> "TriPoly":
        return TriPoly({(a, b - 1, c): b * v for (a, b, c), v in self._terms.items() if b})

    def evaluate(self, z: complex, nu: float) -> complex:
        """Floating-point value with ``zb = conj(z)``."""
        z = complex(z)
        zb = z.conjugate()
        total = 0j
        for (a, b, c), v in self._terms.items():
            total += v * z ** a * zb ** b * nu ** c
        return total

    def evaluate_exact(self, z: complex, nu: float) -> Tuple[Fraction, Fraction]:
        """Exact (real, imag) value, treating the float inputs as exact rationals."""
        z = complex(z)
        x, y, q = Fraction(z.real), Fraction(z.imag), Fraction(nu)
        top = max((max(a, b) for a, b, _ in self._terms), default=0)
        zp = [(Fraction(1), Fraction(0))]
        for _ in range(top):
            re, im = zp[-1]
            zp.append((re * x - im * y, re * y + im * x))
        re_sum = im_sum = Fraction(0)
        for (a, b, c), v in self._terms.items():
            ar, ai = zp[a]
            br, bi = zp[b][0], -zp[b][1]
            scale = v * q ** c
            re_sum += scale * (ar * br - ai * bi)
            im_sum += scale * (ar * bi + ai * br)
        return re_sum, im_sum

    def abs_majorant(self, z: complex, nu: float) -> float:
        """``sum |c| |z|**(a+b) nu**c``, the scale of rounding error in evaluation."""
        r = abs(complex(z))
        return float(sum(abs(v) * r ** (a + b) * nu ** c for (a, b, c), v in self._terms.items()))

    def __repr__(self):
        return f"TriPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b, c), v in self:
            factors = []
            for name, e in (("nu", c), ("z", a), ("zb", b)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(v)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
