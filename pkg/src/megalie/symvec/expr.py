"""A small closed expression class on the chart ``(t, λ, μ, ψ)``.

In-class expressions are kept in a canonical form (:class:`Poly`)::

    (sum of  q * monomial * s^a * i^b * exp(i*P)) / (1 - μ^2)^m

with ``q`` rational, ``a, b ∈ {0, 1}``, ``s = sqrt(1 - μ^2)``, ``i`` the
imaginary unit and ``P`` a real polynomial without constant term.  Sines and
cosines are stored through ``exp(±iP)``, which makes ``sin² + cos² = 1`` and
the angle-addition rules automatic; ``s² = 1 - μ²`` is applied on every
product and ``m`` is kept minimal.  Two in-class expressions denote the same
function exactly when their canonical forms are equal.

Anything that leaves the class (``sqrt`` of something other than
``1 - μ²``, division by a non-unit, trig of a non-polynomial) becomes a
:class:`Node` tree, which still supports numeric evaluation, differentiation
and substitution.  Parameters such as ``Omega`` or ``a1`` are plain symbols;
``pi`` is a symbol that evaluates to π and folds into signs inside
exponentials when it appears as a multiple of π/2.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Mapping

VARIABLES = ("t", "lambda", "mu", "psi")

_S = "_s"
_I = "_i"

DISPLAY = {
    "lambda": "λ",
    "mu": "μ",
    "psi": "ψ",
    "Omega": "Ω",
    "eps": "ε",
    "pi": "π",
    _S: "s",
    _I: "i",
}


class NotInClass(ValueError):
    """The requested operation leaves the canonical expression class."""


def _merge(a: Iterable[tuple], b: Iterable[tuple]) -> dict:
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return d


def _freq_add(f1: tuple, f2: tuple, sign: int = 1) -> tuple:
    d = dict(f1)
    for m, c in f2:
        v = d.get(m, 0) + sign * c
        if v:
            d[m] = v
        else:
            d.pop(m, None)
    return tuple(sorted(d.items()))


def _accumulate(out: dict, key, coef: Fraction) -> None:
    v = out.get(key, 0) + coef
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _mul_into(out: dict, k1, c1, k2, c2) -> None:
    """Add the product of two terms to ``out``, applying s² and i² rules."""
    d = _merge(k1[0], k2[0])
    coef = c1 * c2
    if d.get(_I, 0) == 2:
        del d[_I]
        coef = -coef
    extra = d.get(_S, 0) == 2
    if extra:
        del d[_S]
    mono = tuple(sorted(d.items()))
    freq = _freq_add(k1[1], k2[1]) if k2[1] else k1[1]
    _accumulate(out, (mono, freq), coef)
    if extra:
        d["mu"] = d.get("mu", 0) + 2
        _accumulate(out, (tuple(sorted(d.items())), freq), -coef)


def _lift(terms: dict, k: int) -> dict:
    """Multiply a numerator by ``(1 - μ²)^k``."""
    for _ in range(k):
        out: dict = {}
        for (mono, freq), c in terms.items():
            _accumulate(out, (mono, freq), c)
            d = dict(mono)
            d["mu"] = d.get("mu", 0) + 2
            _accumulate(out, (tuple(sorted(d.items())), freq), -c)
        terms = out
    return terms


def _divide_by_D(terms: dict) -> dict | None:
    """Exact quotient of a numerator by ``1 - μ²``, or None."""
    groups: dict = {}
    for (mono, freq), c in terms.items():
        d = dict(mono)
        e = d.pop("mu", 0)
        groups.setdefault((tuple(sorted(d.items())), freq), {})[e] = c
    out: dict = {}
    for (rest, freq), coeffs in groups.items():
        n = max(coeffs)
        if n < 2:
            return None
        q = [Fraction(0)] * (n - 1)
        for k in range(n - 1):
            q[k] = coeffs.get(k, 0) + (q[k - 2] if k >= 2 else 0)
        for k in (n - 1, n):
            if coeffs.get(k, 0) + (q[k - 2] if k >= 2 else 0) != 0:
                return None
        for k, v in enumerate(q):
            if v:
                d = dict(rest)
                if k:
                    d["mu"] = k
                out[(tuple(sorted(d.items())), freq)] = v
    return out


def _normalized(terms: dict, den: int) -> Poly:
    terms = {k: v for k, v in terms.items() if v}
    while den > 0 and terms:
        q = _divide_by_D(terms)
        if q is None:
            break
        terms, den = q, den - 1
    if not terms:
        den = 0
    return Poly._raw(terms, den)


class Expr:
    """Base class; arithmetic falls back to :class:`Node` outside the class."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return add(self, neg(other))

    def __rsub__(self, other):
        return add(other, neg(self))

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return mul(self, power(other, -1))

    def __rtruediv__(self, other):
        return mul(other, power(self, -1))

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return power(self, n)

    def __call__(self, **env) -> float:
        return self.evaluate(env)

    def canonical(self) -> Poly:
        raise NotImplementedError

    def in_class(self) -> bool:
        try:
            self.canonical()
        except NotInClass:
            return False
        return True

    def evaluate(self, env: Mapping[str, float], mp: bool = False):
        """Real value at a point; raises if the imaginary part is not negligible."""
        z = self.evaluate_complex(env, mp)
        scale = max(1.0, abs(z))
        if abs(z.imag) > 1e-9 * scale:
            raise ValueError(f"expression is not real at {dict(env)}: {z}")
        return z.real


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    if isinstance(x, str):
        return Poly.symbol(x)
    raise TypeError(f"cannot use {x!r} in an expression")


class Poly(Expr):
    """Canonical form of an in-class expression (see module docstring)."""

    __slots__ = ("terms", "den", "_hash")

    @classmethod
    def _raw(cls, terms: dict, den: int) -> Poly:
        p = object.__new__(cls)
        p.terms = terms
        p.den = den
        p._hash = None
        return p

    def __init__(self, *args, **kwargs):
        raise TypeError("use Poly.const, Poly.symbol or arithmetic to build expressions")

    @classmethod
    def const(cls, q) -> Poly:
        q = Fraction(q)
        return cls._raw({((), ()): q} if q else {}, 0)

    @classmethod
    def symbol(cls, name: str) -> Poly:
        if name.startswith("_"):
            raise ValueError(f"reserved name {name!r}")
        return cls._raw({(((name, 1),), ()): Fraction(1)}, 0)

    @classmethod
    def atom(cls, name: str) -> Poly:
        return cls._raw({(((name, 1),), ()): Fraction(1)}, 0)

    def canonical(self) -> Poly:
        return self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.den == other.den and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.den == 0 and all(k == ((), ()) for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise NotInClass("expression is not a rational constant")
        return self.terms.get(((), ()), Fraction(0))

    def free_symbols(self) -> set[str]:
        names: set[str] = set()
        for mono, freq in self.terms:
            for n, _ in mono:
                names.add("mu" if n == _S else n)
            for rm, _ in freq:
                names.update(n for n, _ in rm)
        names.discard(_I)
        if self.den:
            names.add("mu")
        return names

    def is_real_polynomial(self) -> bool:
        return self.den == 0 and all(
            not freq and all(n not in (_S, _I) for n, _ in mono) for mono, freq in self.terms
        )

    def numerator_at(self, den: int) -> dict:
        """Numerator terms over ``(1 - μ²)^den`` (``den >= self.den``)."""
        if den < self.den:
            raise ValueError("cannot lower the denominator")
        return _lift(dict(self.terms), den - self.den)

    # arithmetic --------------------------------------------------------

    def _add(self, other: Poly) -> Poly:
        den = max(self.den, other.den)
        a = self.numerator_at(den)
        for k, v in other.numerator_at(den).items():
            _accumulate(a, k, v)
        return _normalized(a, den)

    def _mul(self, other: Poly) -> Poly:
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _mul_into(out, k1, c1, k2, c2)
        return _normalized(out, self.den + other.den)

    def _scale(self, q: Fraction) -> Poly:
        if not q:
            return Poly.const(0)
        return Poly._raw({k: v * q for k, v in self.terms.items()}, self.den)

    def inverse(self) -> Poly:
        """Multiplicative inverse when the expression is a unit of the class."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero expression")
        terms, k = dict(self.terms), 0
        while True:
            q = _divide_by_D(terms)
            if q is None:
                break
            terms, k = q, k + 1
        if len(terms) != 1:
            raise NotInClass("only monomial units can be inverted")
        ((mono, freq), c), = terms.items()
        d = dict(mono)
        j = d.pop(_S, 0)
        l = d.pop(_I, 0)
        if d:
            raise NotInClass("cannot invert a polynomial in the variables")
        new_mono = []
        coef = 1 / c
        if l:
            coef = -coef
            new_mono.append((_I, 1))
        if j:
            new_mono.append((_S, 1))
        new_mono.sort()
        new_freq = tuple((m, -v) for m, v in freq)
        e = self.den - k - j
        base = {(tuple(new_mono), new_freq): coef}
        if e >= 0:
            return _normalized(_lift(base, e), 0)
        return _normalized(base, -e)

    def pow(self, n: int) -> Poly:
        if n < 0:
            return self.inverse().pow(-n)
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result._mul(base)
            n >>= 1
            if n:
                base = base._mul(base)
        return result

    # calculus ----------------------------------------------------------

    def diff(self, v: str) -> Poly:
        m = self.den
        same: dict = {}
        up: dict = {}
        for key, c in self.terms.items():
            mono, freq = key
            d = dict(mono)
            e = d.get(v, 0)
            if e:
                d2 = dict(d)
                if e == 1:
                    del d2[v]
                else:
                    d2[v] = e - 1
                _accumulate(same, (tuple(sorted(d2.items())), freq), c * e)
            if freq:
                dP = {}
                for rm, a in freq:
                    rd = dict(rm)
                    k = rd.get(v, 0)
                    if k:
                        if k == 1:
                            del rd[v]
                        else:
                            rd[v] = k - 1
                        _accumulate(dP, tuple(sorted(rd.items())), a * k)
                for rm, a in dP.items():
                    _mul_into(same, key, c, (_with_i(rm), ()), a)
            if v == "mu":
                if _S in d:
                    d2 = dict(d)
                    d2["mu"] = d2.get("mu", 0) + 1
                    _accumulate(up, (tuple(sorted(d2.items())), freq), -c)
                if m:
                    d2 = dict(d)
                    d2["mu"] = d2.get("mu", 0) + 1
                    _accumulate(up, (tuple(sorted(d2.items())), freq), 2 * m * c)
        total = _lift(same, 1)
        for k, val in up.items():
            _accumulate(total, k, val)
        return _normalized(total, m + 1)

    # numerics ----------------------------------------------------------

    def evaluate_complex(self, env: Mapping[str, float], mp: bool = False):
        if mp:
            import mpmath

            exp, sqrt, one, pi = mpmath.exp, mpmath.sqrt, mpmath.mpf(1), mpmath.pi
            conv = lambda q: mpmath.mpf(q.numerator) / q.denominator  # noqa: E731
            imag = mpmath.mpc(0, 1)
        else:
            exp, sqrt, one, pi = cmath.exp, math.sqrt, 1.0, math.pi
            conv = float
            imag = 1j
        vals = dict(env)
        vals.setdefault("pi", pi)
        mu = vals.get("mu", 0)
        s = sqrt(one - mu * mu) if any(_S in dict(k[0]) for k in self.terms) else None
        total = 0
        for (mono, freq), c in self.terms.items():
            term = conv(c)
            for n, e in mono:
                if n == _S:
                    term = term * s
                elif n == _I:
                    term = term * imag
                else:
                    term = term * _lookup(vals, n) ** e
            if freq:
                phase = 0
                for rm, a in freq:
                    x = conv(a)
                    for n, e in rm:
                        x = x * _lookup(vals, n) ** e
                    phase = phase + x
                term = term * exp(imag * phase)
            total = total + term
        if self.den:
            total = total / (one - mu * mu) ** self.den
        return complex(total) if not mp else mpmath.mpc(total)

    def subs(self, mapping: Mapping[str, object]) -> Expr:
        """Simultaneous substitution of symbols by expressions."""
        mapping = {k: as_expr(v) for k, v in mapping.items()}
        if not mapping or not (self.free_symbols() & set(mapping)):
            return self
        mu_img = mapping.get("mu")
        s_img = sqrt(1 - mu_img * mu_img) if mu_img is not None else S
        cache: dict = {}

        def factor(n, e):
            key = (n, e)
            if key not in cache:
                if n == _S:
                    cache[key] = s_img
                elif n == _I:
                    cache[key] = I
                else:
                    cache[key] = power(mapping.get(n, Poly.symbol(n)), e)
            return cache[key]

        total: Expr = Poly.const(0)
        for (mono, freq), c in sorted(self.terms.items(), key=_term_order):
            term: Expr = Poly.const(c)
            for n, e in mono:
                term = term * factor(n, e)
            if freq:
                phase: Expr = Poly.const(0)
                for rm, a in freq:
                    x: Expr = Poly.const(a)
                    for n, e in rm:
                        x = x * factor(n, e)
                    phase = phase + x
                term = term * expi(phase)
            total = total + term
        if self.den:
            d_img = 1 - mu_img * mu_img if mu_img is not None else D
            total = total * power(d_img, -self.den)
        return total

    # display -----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)})"


def _with_i(rm: tuple) -> tuple:
    return tuple(sorted(rm + ((_I, 1),)))


def _lookup(vals, n):
    try:
        return vals[n]
    except KeyError:
        raise KeyError(f"no value for symbol {n!r}") from None


def _term_order(item):
    (mono, freq), _ = item
    return (mono, freq)


class Node(Expr):
    """Expression tree for values outside the canonical class."""

    __slots__ = ("op", "args")

    def __init__(self, op: str, args: tuple):
        self.op = op
        self.args = args

    def __eq__(self, other):
        return isinstance(other, Node) and self.op == other.op and self.args == other.args

    def __hash__(self):
        return hash((self.op, self.args))

    def canonical(self) -> Poly:
        rebuilt = self._rebuild(self.args)
        if isinstance(rebuilt, Poly):
            return rebuilt
        raise NotInClass(f"{self} has no canonical form")

    def _rebuild(self, args) -> Expr:
        op = self.op
        if op == "add":
            return add(args[0], args[1])
        if op == "mul":
            return mul(args[0], args[1])
        if op == "pow":
            return power(args[0], args[1])
        return _UNARY[op](args[0])

    def _exprs(self):
        return [a for a in self.args if isinstance(a, Expr)]

    def free_symbols(self) -> set[str]:
        out: set[str] = set()
        for a in self._exprs():
            out |= a.free_symbols()
        return out

    def subs(self, mapping) -> Expr:
        args = tuple(a.subs(mapping) if isinstance(a, Expr) else a for a in self.args)
        return self._rebuild(args)

    def diff(self, v: str) -> Expr:
        op, args = self.op, self.args
        if op == "add":
            return args[0].diff(v) + args[1].diff(v)
        if op == "mul":
            return args[0].diff(v) * args[1] + args[0] * args[1].diff(v)
        if op == "pow":
            u, n = args
            return n * power(u, n - 1) * u.diff(v)
        u = args[0]
        du = u.diff(v)
        if op == "sqrt":
            return du / (2 * self)
        if op == "expi":
            return I * du * self
        if op == "sin":
            return cos(u) * du
        if op == "cos":
            return -sin(u) * du
        raise KeyError(op)

    def evaluate_complex(self, env, mp: bool = False):
        if mp:
            import mpmath as lib

            csqrt, cexp, csin, ccos, j = lib.sqrt, lib.exp, lib.sin, lib.cos, lib.mpc(0, 1)
        else:
            csqrt, cexp, csin, ccos, j = cmath.sqrt, cmath.exp, cmath.sin, cmath.cos, 1j
        op = self.op
        if op == "pow":
            return self.args[0].evaluate_complex(env, mp) ** self.args[1]
        vals = [a.evaluate_complex(env, mp) for a in self.args]
        if op == "add":
            return vals[0] + vals[1]
        if op == "mul":
            return vals[0] * vals[1]
        if op == "sqrt":
            return csqrt(vals[0])
        if op == "expi":
            return cexp(j * vals[0])
        if op == "sin":
            return csin(vals[0])
        if op == "cos":
            return ccos(vals[0])
        raise KeyError(op)

    def __str__(self) -> str:
        op, args = self.op, self.args
        if op == "add":
            return f"({args[0]} + {args[1]})"
        if op == "mul":
            return f"({args[0]})*({args[1]})"
        if op == "pow":
            return f"({args[0]})^{args[1]}"
        if op == "expi":
            return f"exp(i*({args[0]}))"
        return f"{op}({args[0]})"

    __repr__ = __str__


# constructors -------------------------------------------------------------


def add(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a._add(b)
    return Node("add", (a, b))


def neg(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Poly):
        return a._scale(Fraction(-1))
    return Node("mul", (Poly.const(-1), a))


def mul(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a._mul(b)
    return Node("mul", (a, b))


def power(a, n) -> Expr:
    if not isinstance(n, int):
        raise TypeError("only integer powers are supported")
    a = as_expr(a)
    if isinstance(a, Poly):
        try:
            return a.pow(n)
        except NotInClass:
            pass
    return Node("pow", (a, n))


def expi(arg) -> Expr:
    """``exp(i*arg)`` for a real polynomial ``arg``."""
    arg = as_expr(arg)
    if not (isinstance(arg, Poly) and arg.is_real_polynomial()):
        return Node("expi", (arg,))
    quarter_turns = 0
    freq = {}
    for (mono, _), c in arg.terms.items():
        names = {n for n, _ in mono}
        if not mono:
            return Node("expi", (arg,))
        if names == {"pi"}:
            if mono != (("pi", 1),) or (2 * c).denominator != 1:
                return Node("expi", (arg,))
            quarter_turns += int(2 * c)
        else:
            freq[mono] = c
    quarter_turns %= 4
    mono = ((_I, 1),) if quarter_turns % 2 else ()
    coef = Fraction(-1 if quarter_turns >= 2 else 1)
    return Poly._raw({(mono, tuple(sorted(freq.items()))): coef}, 0)


def sin(arg) -> Expr:
    arg = as_expr(arg)
    a, b = expi(arg), expi(neg(arg))
    if isinstance(a, Poly) and isinstance(b, Poly):
        return (a - b) * (I * Fraction(-1, 2))
    return Node("sin", (arg,))


def cos(arg) -> Expr:
    arg = as_expr(arg)
    a, b = expi(arg), expi(neg(arg))
    if isinstance(a, Poly) and isinstance(b, Poly):
        return (a + b) * Fraction(1, 2)
    return Node("cos", (arg,))


def sqrt(arg) -> Expr:
    """Square root; canonical only for ``1 - μ²`` and squares of rationals."""
    arg = as_expr(arg)
    if isinstance(arg, Poly):
        if arg == D:
            return S
        if arg.is_constant():
            q = arg.constant_value()
            if q >= 0:
                n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
                if n * n == q.numerator and d * d == q.denominator:
                    return Poly.const(Fraction(n, d))
    return Node("sqrt", (arg,))


_UNARY = {"sqrt": sqrt, "expi": expi, "sin": sin, "cos": cos}


def symbol(name: str) -> Poly:
    return Poly.symbol(name)


def const(q) -> Poly:
    return Poly.const(q)


t = Poly.symbol("t")
lam = Poly.symbol("lambda")
mu = Poly.symbol("mu")
psi = Poly.symbol("psi")
PI = Poly.symbol("pi")
S = Poly.atom(_S)
I = Poly.atom(_I)
D = Poly.const(1)._add(Poly._raw({((("mu", 2),), ()): Fraction(-1)}, 0))
ZERO = Poly.const(0)
ONE = Poly.const(1)


def diff(e, v: str) -> Expr:
    return as_expr(e).diff(v)


# rendering ----------------------------------------------------------------


def _name(n: str) -> str:
    return DISPLAY.get(n, n)


def _render_mono(mono: tuple) -> str:
    parts = []
    for n, e in mono:
        parts.append(_name(n) if e == 1 else f"{_name(n)}^{e}")
    return "*".join(parts)


def _render_sum(terms: list[tuple[tuple, Fraction]]) -> str:
    """Render ``sum q * mono`` with deterministic ordering."""
    out = []
    for mono, q in sorted(terms, key=lambda kv: (sum(e for _, e in kv[0]), kv[0])):
        body = _render_mono(mono)
        mag = abs(q)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        out.append(("-" if q < 0 else "+", piece))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, piece in out[1:]:
        text += f" {sign} {piece}"
    return text


def _render_phase(freq: tuple) -> str:
    return _render_sum(list(freq))


def render(p: Poly) -> str:
    """Deterministic text form; exponentials are shown as sin/cos pairs."""
    if not p.terms:
        return "0"
    by_freq: dict = {}
    for (mono, freq), c in p.terms.items():
        by_freq.setdefault(freq, {})[mono] = c
    pieces = []
    done = set()
    for freq in sorted(by_freq):
        if freq in done:
            continue
        if not freq:
            pieces.append(_render_sum(list(by_freq[freq].items())))
            done.add(freq)
            continue
        negf = tuple((m, -c) for m, c in freq)
        pos, negk = (freq, negf) if freq[0][1] > 0 else (negf, freq)
        done.update({pos, negk})
        X = Poly._raw({(m, ()): c for m, c in by_freq.get(pos, {}).items()}, 0)
        Y = Poly._raw({(m, ()): c for m, c in by_freq.get(negk, {}).items()}, 0)
        A = X._add(Y)
        B = I._mul(X._add(Y._scale(Fraction(-1))))
        phase = _render_phase(pos)
        for coef, fn in ((A, "cos"), (B, "sin")):
            if coef.terms:
                body = _render_sum([(m, c) for (m, _), c in coef.terms.items()])
                pieces.append(f"({body})*{fn}({phase})")
    text = " + ".join(pieces)
    if p.den:
        d = "(1 - μ^2)" if p.den == 1 else f"(1 - μ^2)^{p.den}"
        text = f"({text})/{d}"
    return text
