"""Program texts and helpers shared by the test modules."""
from wfagg.parser import parse_atoms, parse_program, parse_rule
from wfagg.evaluation import Interpretation

# two-way choice between q and p with a sum over p
CHOICE_WITH_SUM = """\
q(1) :- not p(2,2).
q(2) :- not p(2,1).
p(2,2) :- not q(1).
p(2,1) :- not q(2).
t(X) :- q(X), #sum{Y : p(X,Y)} > 1.
"""

CHOICE_WITH_SUM_GROUND = """\
p(2,1) :- not q(2).
p(2,2) :- not q(1).
q(1) :- not p(2,2).
q(2) :- not p(2,1).
t(1) :- q(1), #sum{<1 : p(1,1)>, <2 : p(1,2)>} > 1.
t(2) :- q(2), #sum{<1 : p(2,1)>, <2 : p(2,2)>} > 1.
"""

# a(1) and a(3) only support each other through the count
COUNT_SELF_SUPPORT = """\
a(1) :- #count{<1 : a(1)>, <2 : a(2)>, <3 : a(3)>} > 2.
a(2).
a(3) :- #count{<1 : a(1)>, <2 : a(2)>, <3 : a(3)>} > 2.
"""

SUM_CHAIN = """\
a(1) :- #sum{<1 : a(1)>, <2 : a(2)>} > 2.
a(2) :- b.
b :- not c.
"""

COUNT_POSITIVE_LOOP = "p(0) :- #count{X : p(X)} > 0.\n"
COUNT_NEGATIVE_LOOP = "p(0) :- #count{X : p(X)} <= 0.\n"

STRATIFIED_COUNT = """\
q(X) :- p(X), #count{Y : a(Y,X), b(X)} <= 2.
p(X) :- q(X), b(X).
"""

ATTACKS_FACTS = """\
player(a). player(b). player(c). player(d). player(e). player(f).
attacks(a,b). attacks(b,a). attacks(c,a). attacks(d,b). attacks(e,c). attacks(f,d).
attacks(a,c). attacks(b,c). attacks(c,b). attacks(d,f). attacks(e,f). attacks(f,e).
max(1).
"""


def atoms(text):
    return frozenset(parse_atoms(text))


def interp(true="", false=""):
    return Interpretation(atoms(true), atoms(false))


def total(program, true=""):
    return Interpretation.total(atoms(true), program.atoms())


def prog(text):
    return parse_program(text)
