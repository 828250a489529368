"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a mapping from monomials to nonzero Fraction coefficients,
relative to a fixed, ordered variable table.  A monomial is an exponent
tuple with one entry per table variable:

    3/2*alpha*beta^2  over  (alpha, beta, gamma, ...)
        ->  {(1, 2, 0, ...): Fraction(3, 2)}

The zero polynomial stores no terms.  Because zero coefficients are never
kept, two polynomials are equal exactly when their term dicts are equal,
so the dict is the canonical form and symbolic identities can be tested
with ``==``.

Printing uses graded lexicographic monomial order (higher total degree
first, ties broken by the exponent vector), which makes rendered output
deterministic and parse/print round-trips exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_VARIABLES = ("alpha", "beta", "gamma", "delta", "eta", "lambda0", "c")

# Accepted input aliases for the ASCII variable names (output is ASCII only).
_GREEK_INPUT = {
    "α": "alpha",
    "β": "beta",
    "γ": "gamma",
    "δ": "delta",
    "η": "eta",
    "λ": "lambda",
    "₀": "0",
}


class PolynomialError(ValueError):
    """Raised for ill-formed polynomial operations (table mismatch, bad eval)."""


class ParseError(PolynomialError):
    """Syntax or name error while parsing an expression, with position info."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableTable:
    """An ordered, immutable set of variable names.

    The order is fixed at construction and determines both the monomial
    exponent layout and the printing order.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = DEFAULT_VARIABLES):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolynomialError(f"duplicate variable names in {names!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *_):
        raise AttributeError("VariableTable is immutable")

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableTable({', '.join(self.names)})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolynomialError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Polynomial":
        """The polynomial consisting of the single variable `name`."""
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def const(self, value: Scalar) -> "Polynomial":
        coeff = Fraction(value)
        if coeff == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * len(self.names): coeff})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def extended(self, extra: Iterable[str]) -> "VariableTable":
        """A new table with `extra` names appended after the current ones."""
        return VariableTable(self.names + tuple(extra))


DEFAULT_TABLE = VariableTable()


class Polynomial:
    """Immutable multivariate polynomial with exact rational coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VariableTable, terms: Mapping[Monomial, Fraction]):
        clean = {m: c for m, c in terms.items() if c != 0}
        for m in clean:
            if len(m) != len(table):
                raise PolynomialError(
                    f"monomial {m} does not match table of size {len(table)}"
                )
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.table != self.table:
                raise PolynomialError("mismatched variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return self.table.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return Polynomial(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("exponent must be a non-negative integer")
        result = self.table.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.table.const(other)
        if not isinstance(other, Polynomial) or other.table != self.table:
            return False
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        """Names of variables that actually occur (nonzero exponent)."""
        used: set[str] = set()
        for m in self.terms:
            for name, e in zip(self.table.names, m):
                if e:
                    used.add(name)
        return used

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, var: str) -> int:
        i = self.table.index(var)
        return max((m[i] for m in self.terms), default=0)

    def coefficient_of(self, var: str, power: int) -> "Polynomial":
        """The coefficient of var^power, as a polynomial without `var`."""
        i = self.table.index(var)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m[i] == power:
                stripped = m[:i] + (0,) + m[i + 1 :]
                out[stripped] = out.get(stripped, Fraction(0)) + c
        return Polynomial(self.table, out)

    def constant_value(self) -> Fraction:
        """The value of a degree-0 polynomial; error if any variable occurs."""
        if self.total_degree() > 0:
            raise PolynomialError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Mapping[str, Union[Scalar, float]]):
        """Evaluate at a point assigning every occurring variable.

        Values may be ints, Fractions, or floats; the result is an exact
        Fraction unless a float value is involved.  Variables that do not
        occur in the polynomial may be omitted from `point`.
        """
        idx_vals = []
        for name in self.variables():
            if name not in point:
                raise PolynomialError(f"unassigned variable {name!r}")
        for i, name in enumerate(self.table.names):
            if name in point:
                v = point[name]
                idx_vals.append((i, v if isinstance(v, float) else Fraction(v)))
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, v in idx_vals:
                if m[i]:
                    term = term * v ** m[i]
            total = total + term
        return total

    def substitute(self, var: str, replacement: "Polynomial") -> "Polynomial":
        """Replace every occurrence of `var` by `replacement`, re-canonicalized."""
        replacement = self._coerce(replacement)
        i = self.table.index(var)
        # Group by exponent of var so each power of the replacement is
        # computed once.
        by_power: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            stripped = m[:i] + (0,) + m[i + 1 :]
            by_power.setdefault(m[i], {})[stripped] = c
        result = self.table.zero
        for power, terms in sorted(by_power.items()):
            partial = Polynomial(self.table, terms)
            result = result + partial * replacement**power
        return result

    def substitute_all(self, assignments: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Apply several single-variable substitutions in table order."""
        out = self
        for name in self.table.names:
            if name in assignments:
                out = out.substitute(name, assignments[name])
        return out

    def reduce_square(self, var: str, rhs: "Polynomial") -> "Polynomial":
        """Rewrite var^2 -> rhs until the degree in `var` is at most 1.

        `rhs` must not involve `var`.  The result is congruent to the input
        modulo the ideal generated by var^2 - rhs.
        """
        rhs = self._coerce(rhs)
        if rhs.degree_in(var) > 0:
            raise PolynomialError(f"reduction rhs must not contain {var!r}")
        i = self.table.index(var)
        out = self
        while out.degree_in(var) >= 2:
            kept: dict[Monomial, Fraction] = {}
            rewritten = self.table.zero
            for m, c in out.terms.items():
                if m[i] >= 2:
                    lowered = m[:i] + (m[i] - 2,) + m[i + 1 :]
                    rewritten = rewritten + Polynomial(self.table, {lowered: c}) * rhs
                else:
                    kept[m] = c
            out = Polynomial(self.table, kept) + rewritten
        return out

    def leading_monomial(self) -> Monomial:
        """Graded-lex largest monomial; error on the zero polynomial."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda m: (sum(m), m))

    def reduce_by_relation(
        self, relation: "Polynomial", pivot: Monomial | None = None
    ) -> "Polynomial":
        """Remainder modulo one relation, eliminating one of its monomials.

        Rewrites every monomial divisible by the pivot (the relation's
        graded-lex leading monomial by default); the result differs from
        the input by a polynomial multiple of the relation, and no
        surviving monomial is divisible by the pivot.  With a single
        relation the remainder is the unique normal form for that pivot,
        so multiples of the relation always reduce to zero.
        """
        relation = self._coerce(relation)
        if relation.is_zero:
            return self
        lead = relation.leading_monomial() if pivot is None else pivot
        if lead not in relation.terms:
            raise PolynomialError("pivot is not a monomial of the relation")
        lead_coeff = relation.terms[lead]
        out = self
        while True:
            target = None
            for m in out.terms:
                if all(e >= le for e, le in zip(m, lead)):
                    target = m
                    break
            if target is None:
                return out
            quotient_mono = tuple(e - le for e, le in zip(target, lead))
            factor = Polynomial(
                self.table, {quotient_mono: out.terms[target] / lead_coeff}
            )
            out = out - factor * relation

    def reduce_by_relations(self, relations: Iterable["Polynomial"]) -> "Polynomial":
        """Round-robin reduction by several relations until a fixpoint."""
        relations = [r for r in relations if not r.is_zero]
        out = self
        while True:
            before = out
            for r in relations:
                out = out.reduce_by_relation(r)
            if out == before:
                return out

    def project_to(self, table: VariableTable) -> "Polynomial":
        """Re-express over `table`; every used variable must exist there."""
        positions = []
        for name, used in zip(self.table.names, self._used_mask()):
            if name in table:
                positions.append(table.index(name))
            elif used:
                raise PolynomialError(
                    f"variable {name!r} still occurs; cannot project"
                )
            else:
                positions.append(None)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            exps = [0] * len(table)
            for e, pos in zip(m, positions):
                if e:
                    exps[pos] = e  # type: ignore[index]
            key = tuple(exps)
            out[key] = out.get(key, Fraction(0)) + c
        return Polynomial(table, out)

    def _used_mask(self) -> list[bool]:
        mask = [False] * len(self.table)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    mask[i] = True
        return mask

    # -- printing ------------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        # Graded lexicographic: total degree descending, then the exponent
        # vector itself descending (earlier variables weigh more).
        return sorted(
            self.terms.items(),
            key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for n, (m, c) in enumerate(self._sorted_terms()):
            factors = []
            for name, e in zip(self.table.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if n == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# -- parsing -----------------------------------------------------------------
#
# Grammar:
#   expr     := term (('+'|'-') term)*
#   term     := factor ('*' factor)*
#   factor   := base ('^' nat)?
#   base     := rational | ident | '(' expr ')' | '-' factor
#   rational := nat ('/' nat)?


class _Tokenizer:
    def __init__(self, text: str):
        for src, dst in _GREEK_INPUT.items():
            text = text.replace(src, dst)
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def next(self) -> tuple[str, object, int]:
        """Return (kind, value, position); kind 'end' at end of input."""
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        start = self.pos
        ch = self.text[start]
        if ch.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return ("int", int(self.text[start : self.pos]), start)
        if ch.isalpha() or ch == "_":
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            return ("ident", self.text[start : self.pos], start)
        if ch in "+-*^()/":
            self.pos += 1
            return (ch, ch, start)
        raise ParseError(f"unexpected character {ch!r}", start)


class _Parser:
    def __init__(self, text: str, table: VariableTable):
        self.table = table
        self.tokens: list[tuple[str, object, int]] = []
        tok = _Tokenizer(text)
        while True:
            t = tok.next()
            self.tokens.append(t)
            if t[0] == "end":
                break
        self.i = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, object, int]:
        t = self.tokens[self.i]
        if t[0] != "end":
            self.i += 1
        return t

    def expect(self, kind: str) -> tuple[str, object, int]:
        t = self.advance()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected trailing token {t[1]!r}", t[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek()[0] == "^":
            self.advance()
            t = self.expect("int")
            p = p ** t[1]  # type: ignore[operator]
        return p

    def base(self) -> Polynomial:
        t = self.advance()
        kind, value, pos = t
        if kind == "int":
            num = value
            if self.peek()[0] == "/":
                self.advance()
                dt = self.expect("int")
                if dt[1] == 0:
                    raise ParseError("zero denominator", dt[2])
                return self.table.const(Fraction(num, dt[1]))  # type: ignore[arg-type]
            return self.table.const(num)  # type: ignore[arg-type]
        if kind == "ident":
            if value not in self.table:
                raise ParseError(f"unknown variable {value!r}", pos)
            return self.table.var(value)  # type: ignore[arg-type]
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_polynomial(text: str, table: VariableTable = DEFAULT_TABLE) -> Polynomial:
    """Parse an expression into a canonical Polynomial over `table`.

    Raises ParseError (with position) on syntax errors or unknown names.
    """
    return _Parser(text, table).parse()
