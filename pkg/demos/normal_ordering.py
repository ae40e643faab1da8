"""Symbolic normal ordering and vacuum expectation values.

Shows the exchange rewrite a(x) a+(y) = d(x,y) +/- a+(y) a(x), the
delta-polynomial structure behind the one-particle number density, and a
numeric cross-check of the symbolic result through the occupation
representation.
"""

from fockfield import ModeSpace, Statistics, annihilate, create, inner, vacuum
from fockfield.wick import LadderKind, evaluate, normal_order, parse, vacuum_expectation

print("== single exchange, both statistics ==")
for text in ("bose: a(x1) a+(x2)", "fermi: a(x1) a+(x2)"):
    print(f"{text}   ->   {normal_order(parse(text))}")

print("\n== the number-density contraction ==")
# <psi| Psi+(x) Psi(x) |psi> for psi = sum f(x') Psi+(x') |0> reduces to
# the vacuum expectation of a(x') a+(x) a(x) a+(x''), and the surviving
# deltas pin x' = x = x'', which is why the density is exactly |f(x)|^2
s = parse("bose: a(xp) a+(x) a(x) a+(xpp)")
dp = vacuum_expectation(s)
print("vacuum expectation:", dp)
print("evaluate at xp = x = xpp = 3:", evaluate(dp, {"x": 3, "xp": 3, "xpp": 3}))
print("evaluate at xp != x:", evaluate(dp, {"x": 3, "xp": 2, "xpp": 3}))

print("\n== fermionic exchange crossing ==")
direct = parse("fermi: a(x1) a(x2) a+(x2) a+(x1)")
crossed = parse("fermi: a(x1) a(x2) a+(x1) a+(x2)")
assign = {"x1": 0, "x2": 1}
print("uncrossed pairing:", evaluate(vacuum_expectation(direct), assign))
print("crossed pairing:  ", evaluate(vacuum_expectation(crossed), assign))

print("\n== numeric cross-check against the occupation representation ==")
space = ModeSpace(2, Statistics.FERMI)


def apply_to_vacuum(string, assignment):
    v = vacuum(space)
    for sym in reversed(string.symbols):
        mode = assignment[sym.label]
        v = create(v, mode) if sym.kind is LadderKind.CREATE else annihilate(v, mode)
    return v


for string in (direct, crossed):
    numeric = inner(vacuum(space), apply_to_vacuum(string, assign))
    symbolic = evaluate(vacuum_expectation(string), assign)
    print(f"{string}:  numeric {numeric.real:+.0f}  symbolic {symbolic:+d}")
