"""Multiplicative relation tables among the generators and derived classes.

Each family lists identities as expression strings over index variables.
The variables in ``chain`` take strictly increasing values starting at
``lower``; every admissible assignment with values at most m gives one
instance of each identity. ``I-[x,y,0]`` and ``I+[x,y,0]`` read as ``I0[x,y]``.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from errors import ParameterError

Identity = Tuple[str, str]


@dataclass(frozen=True)
class RelationFamily:
    """Identities sharing one pattern of index inequalities."""
    label: str
    chain: Tuple[str, ...]
    identities: Tuple[Identity, ...]
    lower: int = 1


def _vanishing(left: str, right: str) -> Tuple[Identity, ...]:
    """All sign choices of a product of two I-classes that vanishes.

    ``left`` and ``right`` carry a ``{}`` placeholder for the sign.
    """
    return tuple((f"{left.format(a)}*{right.format(b)}", "0") for a in "+-" for b in "+-")


def _both_signs(lhs: str, rhs: str) -> Tuple[Identity, ...]:
    return tuple((lhs.format(sign), rhs.format(sign)) for sign in "+-")


def orbit_families(n: int) -> List[RelationFamily]:
    """Defining relations of the orbit ring."""
    s = "" if n % 2 == 0 else "-"
    inner = "+" if n % 2 == 0 else "-"
    return [
        RelationFamily("squares", ("j", "i"), (
            ("A[i,j]*A[i,j]", "0"),
            ("A[i,-j]*A[i,-j]", "0"),
        ), lower=0),
        RelationFamily("zero index collisions", ("i", "r"), (
            ("A[r,0]*A[r,i]", "A[i,0]*(A[r,i] - A[r,0])"),
            ("A[r,0]*A[r,-i]", f"{s}A[i,0]*(A[r,-i] - A[r,0])"),
            ("A[r,i]*A[r,-i]", f"{s}A[i,0]*(A[r,-i] - A[r,i])"),
        )),
        RelationFamily("nonzero index collisions", ("j", "i", "r"), (
            ("A[r,j]*A[r,i]", "A[i,j]*(A[r,i] - A[r,j])"),
            ("A[r,j]*A[r,-i]", f"{s}(A[j,0] + A[i,0] - A[i,-j])*(A[r,-i] - A[r,j])"),
            ("A[r,i]*A[r,-j]", f"{s}A[i,-j]*(A[r,-j] - A[r,i])"),
            ("A[r,-j]*A[r,-i]", f"{s}(A[i,0] - A[i,j] {inner} A[j,0])*(A[r,-i] - A[r,-j])"),
        )),
    ]


ARNOLD_FAMILIES = [
    RelationFamily("squares", ("j", "i"), (("A'[i,j]*A'[i,j]", "0"),)),
    RelationFamily("three-term", ("j", "i", "r"), (
        ("A'[r,j]*A'[r,i]", "A'[i,j]*(A'[r,i] - A'[r,j])"),
    )),
]

C_FAMILIES = [
    RelationFamily("three indices", ("j", "i", "r"), (
        ("C+[r,i]*C+[r,j]", "-C+[i,j]*C+[r,j] + C+[i,j]*C+[r,i]"),
        ("C+[r,i]*C-[r,j]", "-C-[i,j]*C-[r,i] - C+[i,j]*C-[r,j] - C0[j]*C0[r]"),
        ("C-[r,i]*C+[r,j]", "C-[i,j]*C-[r,j] + C+[i,j]*C-[r,i] - C0[i]*C0[r]"),
        ("C-[r,i]*C-[r,j]", "C-[i,j]*C+[r,j] - C-[i,j]*C+[r,i] + C0[j]*C0[i]"),
    )),
    RelationFamily("with a zero index", ("i", "r"), (
        ("C+[r,i]*C0[r]", "-C0[i]*C-[r,i]"),
        ("C-[r,i]*C0[r]", "-C0[i]*C+[r,i]"),
    )),
    RelationFamily("squares", ("j", "i"), (
        ("C+[i,j]*C+[i,j]", "0"),
        ("C-[i,j]*C-[i,j]", "0"),
        ("C+[i,j]*C-[i,j]", "-C0[j]*C0[i]"),
    )),
    RelationFamily("zero squares", ("i",), (("C0[i]*C0[i]", "0"),)),
]

# ideal cut out by the odd invariant generators
K_FAMILIES = [
    RelationFamily("squares", ("j", "i"), (("C+[i,j]*C+[i,j]", "0"),)),
    RelationFamily("three-term", ("j", "i", "r"), (
        ("C+[r,i]*C+[r,j] - C+[i,j]*(C+[r,i] - C+[r,j])", "0"),
    )),
]

D_FAMILIES = [
    RelationFamily("three indices", ("j", "i", "r"), (
        ("D+[r,i]*D+[r,j]", "D-[i,j]*D-[r,j] - D+[i,j]*D-[r,i] - D0[j]*D0[i] + D0[j]*D0[r] - D0[i]*D0[r]"),
        ("D+[r,i]*D-[r,j]", "D-[i,j]*(D+[r,j] - D+[r,i])"),
        ("D-[r,i]*D+[r,j]", "D+[i,j]*(D+[r,j] - D+[r,i])"),
        ("D-[r,i]*D-[r,j]", "-D-[i,j]*D-[r,i] + D+[i,j]*D-[r,j]"),
    )),
    RelationFamily("with a zero index", ("i", "r"), (
        ("D+[r,i]*D0[r]", "-D0[i]*D+[r,i]"),
        ("D-[r,i]*D0[r]", "-D0[i]*D-[r,i]"),
    )),
    RelationFamily("squares", ("j", "i"), (
        ("D+[i,j]*D+[i,j]", "0"),
        ("D-[i,j]*D-[i,j]", "0"),
        ("D0[i]*D0[i]", "0"),
        ("D+[i,j]*D-[i,j]", "0"),
    )),
]

ID0_FAMILIES = [
    RelationFamily("I times D0", ("j", "i", "r"), (
        ("I+[r,i,j]*D0[i]", "I+[r,i,j]*D0[j]"),
        ("I+[r,i,j]*D0[r]", "I+[r,i,j]*D0[j]"),
        ("I-[r,i,j]*D0[i]", "I-[r,i,j]*D0[j]"),
        ("I-[r,i,j]*D0[r]", "I-[r,i,j]*D0[j]"),
    )),
]

PUNCTURED_SQUARES = [
    RelationFamily("exterior generators", (), (("A[1,0]*A[1,0]", "0"),)),
    RelationFamily("D0 squares", ("i",), (("D0[i]*D0[i]", "0"),), lower=2),
]

I_FAMILIES = [
    # equal outer indices, no zero index
    RelationFamily("r=s, b<a<j<i", ("b", "a", "j", "i", "r"), (
        ("I+[r,i,j]*I+[r,a,b]",
         "I+[j,a,b]*(I-[r,i,a] - I+[r,i,a] + I+[r,i,j]) + (I0[i,b] - I+[i,j,a] - I0[i,j] - I0[j,b])*I+[r,a,b]"),
        ("I-[r,i,j]*I-[r,a,b]", "I-[j,a,b]*I-[r,i,j] - I+[i,j,b]*I-[r,a,b]"),
        ("I+[r,i,j]*I-[r,a,b]",
         "I-[j,a,b]*(I+[r,i,j] - I+[r,i,b]) + (I-[i,j,b] - I+[i,j,b] - I0[j,b] + I0[i,b] - I0[i,j])*I-[r,a,b]"),
        ("I-[r,i,j]*I+[r,a,b]", "I+[j,a,b]*I-[r,i,j] - I+[i,j,a]*I+[r,a,b]"),
    )),
    RelationFamily("r=s, b<j<a<i", ("b", "j", "a", "i", "r"), (
        ("I+[r,i,j]*I+[r,a,b]",
         "(I-[a,j,b] - I+[a,j,b] + I0[a,b] - I0[a,j] - I0[j,b])*(I+[r,i,a] - I-[r,i,a] - I+[r,i,j])"
         " + I+[i,j,b]*(I+[r,a,j] - I+[r,a,b]) + (I0[i,b] - I0[i,j] - I0[j,b])*I+[r,a,b]"),
        ("I-[r,i,j]*I-[r,a,b]", "-I-[a,j,b]*I-[r,i,j] - I+[i,j,b]*I-[r,a,b]"),
        ("I+[r,i,j]*I-[r,a,b]",
         "I-[a,j,b]*(I+[r,i,b] - I+[r,i,j] - I-[r,i,b]) + (I0[i,b] - I+[i,j,b] - I0[j,b] - I0[i,j])*I-[r,a,b]"),
        ("I-[r,i,j]*I+[r,a,b]",
         "I+[i,j,b]*(I+[r,a,j] - I+[r,a,b]) + (I0[j,b] - I0[a,b] + I0[a,j] - I-[a,j,b] + I+[a,j,b])*I-[r,i,j]"),
    )),
    RelationFamily("r=s, j<b<a<i", ("j", "b", "a", "i", "r"), (
        ("I+[r,i,j]*I+[r,a,b]",
         "(I+[a,b,j] - I-[a,b,j] - I0[a,j] + I0[a,b] + I0[b,j])*(I+[r,i,a] - I-[r,i,a] - I+[r,i,j])"
         " + I-[i,b,j]*(I+[r,a,j] - I+[r,a,b]) + (I0[i,b] - I0[i,j] + I0[b,j])*I+[r,a,b]"),
        ("I-[r,i,j]*I-[r,a,b]", "-I-[i,b,j]*I-[r,a,b] - I+[a,b,j]*I-[r,i,j]"),
        ("I+[r,i,j]*I-[r,a,b]",
         "I+[a,b,j]*(I+[r,i,b] - I-[r,i,b] - I+[r,i,j]) + (I0[b,j] - I0[i,j] + I0[i,b] - I-[i,b,j])*I-[r,a,b]"),
        ("I-[r,i,j]*I+[r,a,b]",
         "I-[i,b,j]*(I+[r,a,j] - I+[r,a,b]) + (I-[a,b,j] - I+[a,b,j] - I0[b,j] + I0[a,j] - I0[a,b])*I-[r,i,j]"),
    )),
    RelationFamily("r=s, a=i, b<j", ("b", "j", "i", "r"), _vanishing("I{}[r,i,j]", "I{}[r,i,b]")),
    RelationFamily("r=s, a=j", ("b", "j", "i", "r"), _vanishing("I{}[r,i,j]", "I{}[r,j,b]")),
    RelationFamily("r=s, b=j", ("j", "a", "i", "r"), _vanishing("I{}[r,i,j]", "I{}[r,a,j]")),
    RelationFamily("r=s, squares", ("j", "i", "r"), _vanishing("I{}[r,i,j]", "I{}[r,i,j]")),
    # equal outer indices, one zero index
    RelationFamily("r=s, j=0, i<b<a", ("i", "b", "a", "r"),
                   _both_signs("I0[r,i]*I{0}[r,a,b]", "I0[b,i]*I{0}[r,a,b]"), lower=2),
    RelationFamily("r=s, j=0, b<i<a", ("b", "i", "a", "r"),
                   _both_signs("I0[r,i]*I{0}[r,a,b]", "-I0[i,b]*I{0}[r,a,b]")),
    RelationFamily("r=s, j=0, b<a<i", ("b", "a", "i", "r"),
                   _both_signs("I0[r,i]*I{0}[r,a,b]", "-I0[i,b]*I{0}[r,a,b]")),
    RelationFamily("r=s, j=0, a=i", ("b", "i", "r"), _both_signs("I0[r,i]*I{0}[r,i,b]", "0")),
    RelationFamily("r=s, j=0, b=i", ("i", "a", "r"), _both_signs("I0[r,i]*I{0}[r,a,i]", "0"), lower=2),
    RelationFamily("r=s, j=b=0", ("a", "i", "r"), (("I0[r,i]*I0[r,a]", "0"),), lower=2),
    RelationFamily("r=s, j=b=0, a=i", ("i", "r"), (("I0[r,i]*I0[r,i]", "0"),), lower=2),
    # inner index of the second factor equals the outer index of the first
    RelationFamily("a=r<s, j<i<b", ("j", "i", "b", "r", "s"), (
        ("I+[r,i,j]*I+[s,r,b]", "I+[b,i,j]*(I+[s,r,b] - I+[s,r,i])"),
        ("I-[r,i,j]*I-[s,r,b]", "I-[b,i,j]*I-[s,r,b] + I-[r,i,j]*I+[s,b,j]"),
        ("I+[r,i,j]*I-[s,r,b]", "I+[b,i,j]*I-[s,r,b] + I+[r,i,j]*I+[s,b,i]"),
        ("I-[r,i,j]*I+[s,r,b]", "I-[b,i,j]*(I+[s,r,b] - I+[s,r,j])"),
    )),
    RelationFamily("a=r<s, j<b<i", ("j", "b", "i", "r", "s"), (
        ("I+[r,i,j]*I+[s,r,b]", "(I-[i,b,j] - I+[i,b,j] - I0[b,j] + I0[i,j] - I0[i,b])*(I+[s,r,i] - I+[s,r,b])"),
        ("I-[r,i,j]*I-[s,r,b]", "I-[r,i,j]*I+[s,b,j] - I-[i,b,j]*I-[s,r,b]"),
        ("I+[r,i,j]*I-[s,r,b]",
         "(I+[r,i,j] - I+[r,i,b])*I+[s,b,j] + (-I-[i,b,j] + I+[i,b,j] + I0[b,j] - I0[i,j] + I0[i,b])*I-[s,r,b]"),
        ("I-[r,i,j]*I+[s,r,b]", "I-[i,b,j]*(I+[s,r,j] - I+[s,r,b])"),
    )),
    RelationFamily("a=r<s, b<j<i", ("b", "j", "i", "r", "s"), (
        ("I+[r,i,j]*I+[s,r,b]", "(I-[i,j,b] - I+[i,j,b] - I0[j,b] + I0[i,b] - I0[i,j])*(I+[s,r,b] - I+[s,r,i])"),
        ("I-[r,i,j]*I-[s,r,b]", "I-[r,i,j]*I-[s,j,b] - I+[i,j,b]*I-[s,r,b]"),
        ("I+[r,i,j]*I-[s,r,b]",
         "(I+[r,i,j] - I+[r,i,b])*I-[s,j,b] + (I-[i,j,b] - I+[i,j,b] - I0[j,b] + I0[i,b] - I0[i,j])*I-[s,r,b]"),
        ("I-[r,i,j]*I+[s,r,b]", "I+[i,j,b]*(I+[s,r,j] - I+[s,r,b])"),
    )),
    RelationFamily("a=r<s, b=i", ("j", "i", "r", "s"), _vanishing("I{}[r,i,j]", "I{}[s,r,i]")),
    RelationFamily("a=r<s, b=j", ("j", "i", "r", "s"), _vanishing("I{}[r,i,j]", "I{}[s,r,j]")),
    RelationFamily("a=r<s, j=0, i<b", ("i", "b", "r", "s"),
                   _both_signs("I0[r,i]*I{0}[s,r,b]", "I0[b,i]*I{0}[s,r,b]"), lower=2),
    RelationFamily("a=r<s, j=0, b<i", ("b", "i", "r", "s"),
                   _both_signs("I0[r,i]*I{0}[s,r,b]", "-I0[i,b]*I{0}[s,r,b]")),
    RelationFamily("a=r<s, j=0, b=i", ("i", "r", "s"), _both_signs("I0[r,i]*I{0}[s,r,i]", "0"), lower=2),
    RelationFamily("a=r<s, b=0", ("j", "i", "r", "s"),
                   _both_signs("I{0}[r,i,j]*I0[s,r]", "I{0}[r,i,j]*I0[s,j]")),
    RelationFamily("a=r<s, j=b=0", ("i", "r", "s"), (("I0[r,i]*I0[s,r]", "0"),), lower=2),
    # equal inner indices
    RelationFamily("a=i<r<s, j<b", ("j", "b", "i", "r", "s"), (
        ("I+[r,i,j]*I+[s,i,b]", "(I-[i,b,j] - I0[b,j] + I0[i,j] - I0[i,b] - I+[i,b,j])*I-[s,r,i]"),
        ("I-[r,i,j]*I-[s,i,b]", "I-[r,b,j]*I-[s,i,b] + I-[r,i,j]*I+[s,b,j]"),
        ("I+[r,i,j]*I-[s,i,b]", "(I+[r,i,j] - I+[r,i,b])*I+[s,b,j]"),
        ("I-[r,i,j]*I+[s,i,b]", "I-[r,b,j]*(I+[s,i,b] - I+[s,i,j])"),
    )),
    RelationFamily("a=i<r<s, b<j", ("b", "j", "i", "r", "s"), (
        ("I+[r,i,j]*I+[s,i,b]", "(-I-[i,j,b] + I+[i,j,b] + I0[j,b] - I0[i,b] + I0[i,j])*I-[s,r,i]"),
        ("I-[r,i,j]*I-[s,i,b]", "I-[r,i,j]*I-[s,j,b] + I+[r,j,b]*I-[s,i,b]"),
        ("I+[r,i,j]*I-[s,i,b]", "(I+[r,i,j] - I+[r,i,b])*I-[s,j,b]"),
        ("I-[r,i,j]*I+[s,i,b]", "I+[r,j,b]*(I+[s,i,b] - I+[s,i,j])"),
    )),
    RelationFamily("a=i<r<s, b=j", ("j", "i", "r", "s"), _vanishing("I{}[r,i,j]", "I{}[s,i,j]")),
    RelationFamily("a=i<r<s, j=0", ("b", "i", "r", "s"),
                   _both_signs("I0[r,i]*I{0}[s,i,b]", "I0[r,b]*I{0}[s,i,b]")),
    RelationFamily("a=i<r<s, b=0", ("j", "i", "r", "s"),
                   _both_signs("I{0}[r,i,j]*I0[s,i]", "I{0}[r,i,j]*I0[s,j]")),
    RelationFamily("a=i<r<s, j=b=0", ("i", "r", "s"), (("I0[r,i]*I0[s,i]", "0"),), lower=2),
    # alternative pairings of the same four D classes
    RelationFamily("j<t<s<i<r", ("j", "t", "s", "i", "r"), (
        ("I-[i,s,j]*I-[r,t,j]", "I-[s,t,j]*I-[r,i,j]"),
        ("I-[i,t,j]*I-[r,s,j]", "-I-[s,t,j]*I-[r,i,j]"),
    ), lower=0),
    RelationFamily("j<i<t<s<r", ("j", "i", "t", "s", "r"), (
        ("I-[s,t,i]*I+[r,i,j]", "I+[t,i,j]*I-[r,s,i]"),
        ("I+[s,i,j]*I-[r,t,i]", "-I+[t,i,j]*I-[r,s,i]"),
    )),
]

# table name -> (required parity of n or None, ring family, families)
_TABLES: Dict[str, Tuple[Optional[str], str]] = {
    "A-table": (None, "orbit"),
    "arnold-table": (None, "arnold"),
    "C-table": ("odd", "orbit"),
    "K-table": ("odd", "orbit"),
    "D-table": ("even", "orbit"),
    "I-table": ("even", "orbit"),
    "ID0-table": ("even", "orbit"),
    "J'-table": ("even", "orbit"),
}

TABLE_NAMES = tuple(_TABLES)


def table_requirements(table: str) -> Tuple[Optional[str], str]:
    if table not in _TABLES:
        raise ParameterError(f"unknown relation table '{table}'")
    return _TABLES[table]


def relation_families(table: str, n: int) -> List[RelationFamily]:
    """
    Families of a relation table.

    Args:
        table: Table name, one of TABLE_NAMES
        n: Sphere dimension; the orbit relations depend on its parity

    Returns:
        List of relation families
    """
    table_requirements(table)
    if table == "A-table":
        return orbit_families(n)
    if table == "J'-table":
        without_i0 = [
            RelationFamily(f.label, f.chain, tuple(i for i in f.identities if "I0[" not in i[0] + i[1]), f.lower)
            for f in I_FAMILIES
        ]
        return PUNCTURED_SQUARES + ID0_FAMILIES + [f for f in without_i0 if f.identities]
    return {
        "arnold-table": ARNOLD_FAMILIES,
        "C-table": C_FAMILIES,
        "K-table": K_FAMILIES,
        "D-table": D_FAMILIES,
        "I-table": I_FAMILIES,
        "ID0-table": ID0_FAMILIES,
    }[table]
