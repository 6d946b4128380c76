"""Built-in systems with known exponents, written in the system-file grammar."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sysfile import SystemFile, parse_system


def grushin(n: int, l: int) -> str:
    fields = [f"field X{i} = d{i}" for i in range(1, n)]
    fields.append(f"field X{n} = x1^{l}*d{n}")
    weights = " ".join(["1"] * (n - 1) + [str(l + 1)])
    return f"# Grushin n={n} l={l}\ndim {n}\nweights {weights}\n" + "\n".join(fields) + "\n"


def bony(n: int) -> str:
    x2 = " + ".join(f"x1^{k - 1}*d{k}" for k in range(2, n + 1))
    weights = " ".join(str(k) for k in range(1, n + 1))
    return f"# Bony n={n}\ndim {n}\nweights {weights}\nfield X1 = d1\nfield X2 = {x2}\n"


MARTINET = """\
# Martinet
dim 3
weights 1 1 3
field X1 = 1*d1
field X2 = 1*d2 + x1^2*d3
"""

EXAMPLE_FRACTIONAL = """\
# fractional exponent 11/3
dim 3
weights 1 2 3
field X1 = d1
field X2 = x1*d2 + x2*d3
field X3 = x1^2*d3
"""

EXAMPLE_Q_MINUS_ALPHA = """\
# Q0 = Q - alpha(X) > w
dim 3
weights 1 2 4
field X1 = d1
field X2 = x1*d2 + x1^3*d3
field X3 = x1*x2*d3
"""

EXAMPLE_SUBST = """\
# Q0 = w > Q - alpha(X); needs u1 = x1 + x2, u2 = x2
dim 3
weights 1 1 3
field X1 = d1 - x2^2*d3
field X2 = d2 + x1^2*d3
"""

EXAMPLE_SUBST_CHART = """\
# the previous example after the change of variables, as a raw chart
chart
pair 1 4
pair 0 5
b 0
"""

HEISENBERG = """\
# Heisenberg type
dim 3
weights 1 1 2
field X1 = d1 + 2*x2*d3
field X2 = d2 - 2*x1*d3
"""

EUCLIDEAN_2 = """\
dim 2
weights 1 1
field X1 = d1
field X2 = d2
"""


@dataclass(frozen=True)
class CatalogCase:
    name: str
    text: str
    Q0: Fraction
    d0: int
    subst: str | None = None

    def load(self, with_subst: bool = True) -> SystemFile:
        text = self.text
        if with_subst and self.subst:
            text += f"subst {self.subst}\n"
        return parse_system(text, self.name)


CATALOG = {c.name: c for c in [
    CatalogCase("grushin-2-1", grushin(2, 1), Fraction(2), 1),
    CatalogCase("grushin-2-2", grushin(2, 2), Fraction(3), 0),
    CatalogCase("grushin-2-3", grushin(2, 3), Fraction(4), 0),
    CatalogCase("grushin-3-1", grushin(3, 1), Fraction(3), 1),
    CatalogCase("bony-2", bony(2), Fraction(2), 1),
    CatalogCase("bony-3", bony(3), Fraction(5), 0),
    CatalogCase("martinet", MARTINET, Fraction(4), 1),
    CatalogCase("fractional", EXAMPLE_FRACTIONAL, Fraction(11, 3), 0),
    CatalogCase("q-minus-alpha", EXAMPLE_Q_MINUS_ALPHA, Fraction(4), 1),
    CatalogCase("subst", EXAMPLE_SUBST, Fraction(4), 1, subst="1 1 ; 0 1"),
    CatalogCase("subst-chart", EXAMPLE_SUBST_CHART, Fraction(4), 1),
    CatalogCase("heisenberg", HEISENBERG, Fraction(4), 0),
    CatalogCase("euclidean-2", EUCLIDEAN_2, Fraction(2), 0),
]}
