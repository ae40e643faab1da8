"""Symbolic normal ordering of ladder-operator strings.

Expressions are sequences of abstract creation/annihilation symbols over
free labels (x, x', p1, ...).  Rewriting uses the exchange rule

    a(α) a+(β) = δ_{αβ} ± a+(β) a(α)     (+ bosons, − fermions)

applied to the leftmost offending adjacent pair until every term has all
creators left of all annihilators; the inversion count strictly
decreases, so this terminates.  Kronecker deltas stay symbolic as label
pairs and are resolved only when a concrete index assignment is supplied.

Grammar (parse/format round-trip):

    string  = prefix atom*
    prefix  = "bose:" | "fermi:"
    atom    = "a(" label ")" | "a+(" label ")"
    label   = one or more characters excluding whitespace and parentheses
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .fock import Statistics


class LadderKind(Enum):
    CREATE = "a+"
    ANNIHILATE = "a"


@dataclass(frozen=True)
class LadderSymbol:
    kind: LadderKind
    label: str

    def __str__(self):
        return f"{self.kind.value}({self.label})"


@dataclass(frozen=True)
class OperatorString:
    symbols: tuple
    statistics: Statistics

    def __str__(self):
        atoms = " ".join(str(s) for s in self.symbols)
        return f"{self.statistics.value}:" + (f" {atoms}" if atoms else "")


@dataclass(frozen=True)
class NormalTerm:
    """coefficient × (product of deltas) × normal-ordered operator string."""

    coefficient: int
    deltas: tuple  # sorted tuple of sorted label pairs
    operators: tuple  # LadderSymbols, all CREATE before all ANNIHILATE

    def __str__(self):
        parts = [f"d({a},{b})" for a, b in self.deltas]
        parts += [str(s) for s in self.operators]
        mag = abs(self.coefficient)
        if not parts:
            parts = ["1"]
        body = " ".join(parts)
        return body if mag == 1 else f"{mag} {body}"


@dataclass(frozen=True)
class NormalForm:
    terms: tuple
    statistics: Statistics

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, t in enumerate(self.terms):
            if i == 0:
                out.append(("-" if t.coefficient < 0 else "") + str(t))
            else:
                out.append(("- " if t.coefficient < 0 else "+ ") + str(t))
        return " ".join(out)


@dataclass(frozen=True)
class DeltaPolynomial:
    """Sum of integer-weighted Kronecker delta products over label pairs."""

    terms: tuple  # of (coefficient, deltas) pairs

    def labels(self) -> set:
        out = set()
        for _, deltas in self.terms:
            for a, b in deltas:
                out.update((a, b))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for i, (coeff, deltas) in enumerate(self.terms):
            body = " ".join(f"d({a},{b})" for a, b in deltas) or "1"
            mag = abs(coeff)
            piece = body if mag == 1 else f"{mag} {body}"
            if i == 0:
                chunks.append(("-" if coeff < 0 else "") + piece)
            else:
                chunks.append(("- " if coeff < 0 else "+ ") + piece)
        return " ".join(chunks)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_ATOM = re.compile(r"a(\+)?\(([^()\s]+)\)$")
_PREFIXES = {"bose:": Statistics.BOSE, "fermi:": Statistics.FERMI}


def parse(text: str) -> OperatorString:
    """Parse an operator string; raises ParseError with the failing position."""
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    for prefix, stats in _PREFIXES.items():
        if stripped.startswith(prefix):
            break
    else:
        raise ParseError("expected statistics prefix 'bose:' or 'fermi:'", offset)
    symbols = []
    pos = offset + len(prefix)
    rest = text[pos:]
    for m in re.finditer(r"\S+", rest):
        atom = m.group(0)
        am = _ATOM.match(atom)
        if am is None:
            raise ParseError(f"malformed atom {atom!r}", pos + m.start())
        kind = LadderKind.CREATE if am.group(1) else LadderKind.ANNIHILATE
        symbols.append(LadderSymbol(kind, am.group(2)))
    return OperatorString(tuple(symbols), stats)


def _term_sort_key(term: NormalTerm):
    ops = tuple((s.kind.value, s.label) for s in term.operators)
    return (ops, term.deltas)


def _sorted_block(symbols, fermi: bool):
    """Canonicalize same-kind symbols by label.

    They (anti)commute exactly, so sorting is free up to a fermionic sign
    given by the parity of the permutation; a fermionic repeat makes the
    whole term the zero operator.
    """
    labels = [s.label for s in symbols]
    if fermi and len(set(labels)) != len(labels):
        return 0, ()
    sign = 1
    if fermi:
        inversions = sum(
            1
            for i in range(len(labels))
            for j in range(i + 1, len(labels))
            if labels[i] > labels[j]
        )
        sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(symbols, key=lambda s: s.label))


def normal_order(s: OperatorString) -> NormalForm:
    """Rewrite into an equal sum of normal-ordered terms.

    Equality is as operator identities on the safe (untruncated) subspace.
    Within each term the same-kind symbols are label-sorted (free up to a
    fermionic sign) and the term list is ordered canonically, so equal
    inputs print identically.
    """
    swap_sign = 1 if s.statistics is Statistics.BOSE else -1
    pending = [(1, frozenset(), list(s.symbols))]
    collected: dict = {}
    while pending:
        coeff, deltas, syms = pending.pop()
        for i in range(len(syms) - 1):
            if syms[i].kind is LadderKind.ANNIHILATE and syms[i + 1].kind is LadderKind.CREATE:
                a, b = syms[i].label, syms[i + 1].label
                contracted = syms[:i] + syms[i + 2:]
                new_deltas = deltas if a == b else deltas | {tuple(sorted((a, b)))}
                pending.append((coeff, new_deltas, contracted))
                swapped = syms[:i] + [syms[i + 1], syms[i]] + syms[i + 2:]
                pending.append((coeff * swap_sign, deltas, swapped))
                break
        else:
            fermi = s.statistics is Statistics.FERMI
            split = next(
                (i for i, sym in enumerate(syms) if sym.kind is LadderKind.ANNIHILATE),
                len(syms),
            )
            csign, creates = _sorted_block(syms[:split], fermi)
            asign, annihilates = _sorted_block(syms[split:], fermi)
            if csign * asign == 0:
                continue
            key = (tuple(sorted(deltas)), creates + annihilates)
            collected[key] = collected.get(key, 0) + coeff * csign * asign
    terms = [
        NormalTerm(coeff, deltas, ops)
        for (deltas, ops), coeff in collected.items()
        if coeff != 0
    ]
    terms.sort(key=_term_sort_key)
    return NormalForm(tuple(terms), s.statistics)


def vacuum_expectation(s: OperatorString) -> DeltaPolynomial:
    """⟨ψ₀, s ψ₀⟩ as a delta polynomial.

    Only fully contracted terms survive: any annihilator acting on the
    vacuum (or creator acting leftward on it) kills the term, so the
    expectation is the sum of coefficients of operator-free terms.
    """
    nf = normal_order(s)
    return DeltaPolynomial(
        tuple((t.coefficient, t.deltas) for t in nf.terms if not t.operators)
    )


def evaluate(dp: DeltaPolynomial, assignment) -> int:
    """Resolve a delta polynomial against concrete indices per label."""
    missing = dp.labels() - set(assignment)
    if missing:
        raise ValueError(f"no assignment for labels {sorted(missing)}")
    total = 0
    for coeff, deltas in dp.terms:
        if all(assignment[a] == assignment[b] for a, b in deltas):
            total += coeff
    return total
