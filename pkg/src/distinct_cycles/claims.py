"""Cycle lengths as stated for each construction family, transcribed verbatim.

These are claims to audit, never inputs to the construction: the ledger
derives every length from geometry and compares against this data.
"""

from __future__ import annotations

import re

from .catalog import Kind, Linear

# Row-major, four per row, exactly as printed.
TEN_CHORD_TABLE = """
27t+i-57   28t+i+7    29t+i+210  30t+i
31t+i+1    32t+i      33t+i      34t+i-5
35t+i+3    36t+i+3    37t+i+742  38t+2i-51
38t+2i+216 40t+2i+209 40t+2i     42t+2i
42t+2i-1   44t+2i-6   44t+2i-3   46t+2i+5
46t+2i+744 48t+3i+158 49t+3i+215 50t+3i+209
51t+3i-1   52t+3i-1   53t+3i-7   54t+3i-4
55t+3i-1   56t+3i+746 59t+4i+157 59t+4i+215
61t+4i+208 61t+4i-2   63t+4i-7   63t+4i-5
65t+4i-2   65t+4i+740 69t+5i+157 70t+5i+214
71t+5i+207 72t+5i-8   73t+5i-5   74t+5i-3
75t+5i+739 80t+6i+156 80t+6i+213 82t+6i+201
82t+6i-6   84t+6i-3   84t+6i+738 90t+7i+155
91t+7i+207 92t+7i+203 93t+7i-4   94t+7i+738
101t+8i+149 101t+8i+209 103t+8i+205 103t+8i+737
111t+9i+151 112t+9i+211 113t+9i+946 122t+10i+153
122t+10i+952 132t+11i+894
"""

THREE_CYCLE_CLAIMS = {
    Kind.THREE_CYCLE_ODD: "21t+2j+1 23t+2j 25t+2j",
    Kind.THREE_CYCLE_EVEN: "21t+2j 22t+2j+1 25t+2j+1",
    Kind.THREE_CYCLE_SHIFT: "23t+2j+1 24t+2j+2 26t+2j+2",
}

_TERM = re.compile(r"^(\d*)t(?:\+(\d*)[ij])?([+-]\d+)?$")


def parse_linear(text: str) -> Linear:
    """Parse ``At+Bk+C`` (k written as i or j) into a :class:`Linear`."""
    m = _TERM.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse length expression {text!r}")
    t_coef = int(m.group(1) or 1)
    k_coef = 0 if m.group(2) is None else int(m.group(2) or 1)
    const = int(m.group(3) or 0)
    return Linear.of(const, t_coef, k_coef)


def claimed_lengths(kind: Kind) -> list[Linear]:
    if kind is Kind.TEN_CHORD:
        return [parse_linear(tok) for tok in TEN_CHORD_TABLE.split()]
    return [parse_linear(tok) for tok in THREE_CYCLE_CLAIMS[kind].split()]
